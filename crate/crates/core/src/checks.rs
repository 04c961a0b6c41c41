//! The acceptance criteria as runnable checks, shared by the `check-all`
//! command and the acceptance test.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::Serialize;

use crate::exactnum::{Sign, SqrtNumber};
use crate::gradedstruct::{graded_tensor, isotypic_type, m_standard, q_standard, BlockType, GradedMatrixAlgebra};
use crate::seminormal::{
    build_rep_clifford_tensor, build_rep_plain, build_rep_variant, classify_rep, regular_decompose, spectrum_of,
    verify_relations, AlgebraTag, CoefficientVariant,
};
use crate::shiftedcomb::{
    algebra_from_graph, odd_partition_count_check, schur_branching_graph, spectrum_vector, standard_tableaux,
    strict_partitions, triangular_root, BranchingGraph, GraphSource,
};
use crate::spinalg::{even_presentation_check, graded_centralizer, gz_algebras, verify_identity_suite};

/// Largest `max_n` accepted by [`check_all`].
pub const MAX_CHECK_RANK: usize = 7;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckAllReport {
    pub schema: &'static str,
    pub max_n: usize,
    pub criteria: Vec<CriterionResult>,
    pub all_pass: bool,
}

impl CheckAllReport {
    /// One line per criterion.
    pub fn table(&self, timings: bool) -> String {
        let mut s = String::new();
        for c in &self.criteria {
            let time = if timings { format!(" {:>8.2}s", c.seconds) } else { String::new() };
            s.push_str(&format!(
                "[{}] {:>2} {:<22}{time}  {}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.name,
                c.detail
            ));
        }
        s.push_str(if self.all_pass { "all criteria pass\n" } else { "some criteria FAIL\n" });
        s
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "counting identity"),
    (2, "relation suite"),
    (3, "oracle equivalence"),
    (4, "spectrum theorem"),
    (5, "identity suites"),
    (6, "tensor classification"),
    (7, "branching coherence"),
    (8, "GZ maximality"),
    (9, "typo adjudication"),
    (10, "exactnum properties"),
];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn run_criterion(id: u8, max_n: usize) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => counting_identity(max_n),
        2 => relation_suite(max_n),
        3 => oracle_equivalence(max_n),
        4 => spectrum_theorem(max_n),
        5 => identity_suites(max_n),
        6 => tensor_classification(),
        7 => branching_coherence(max_n),
        8 => gz_maximality(max_n),
        9 => typo_adjudication(max_n),
        10 => exactnum_properties(1000, 0x5eed),
        _ => Err(format!("unknown criterion {id}")),
    };
    let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1);
    let (pass, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id, name, pass, detail, seconds: start.elapsed().as_secs_f64() }
}

/// Run every criterion with ranks capped at `max_n`.
pub fn check_all(max_n: usize) -> CheckAllReport {
    let max_n = max_n.min(MAX_CHECK_RANK);
    let criteria: Vec<CriterionResult> = CRITERIA.iter().map(|(id, _)| run_criterion(*id, max_n)).collect();
    let all_pass = criteria.iter().all(|c| c.pass);
    CheckAllReport { schema: crate::SCHEMA, max_n, criteria, all_pass }
}

fn counting_identity(max_n: usize) -> Outcome {
    const EXPECTED: [usize; 7] = [1, 1, 2, 2, 3, 4, 5];
    let mut counts = Vec::new();
    for n in 1..=max_n.min(7) {
        let c = odd_partition_count_check(n).map_err(err)?;
        ensure(c.all_equal, || format!("n={n}: counts differ: {c:?}"))?;
        ensure(c.strict_count == EXPECTED[n - 1], || format!("n={n}: {} strict partitions", c.strict_count))?;
        ensure(n > 6 || c.supercenter_dim.is_some(), || format!("n={n}: supercenter not computed"))?;
        counts.push(c.strict_count);
    }
    Ok(format!("strict = odd = supercenter dim: {counts:?}"))
}

fn relation_suite(max_n: usize) -> Outcome {
    let mut shapes = 0;
    for n in 1..=max_n.min(6) {
        for alpha in strict_partitions(n) {
            for tensor in [false, true] {
                let rep = if tensor { build_rep_clifford_tensor(&alpha) } else { build_rep_plain(&alpha) }
                    .map_err(|e| format!("{alpha} ({}): {e}", if tensor { "tensor" } else { "plain" }))?;
                let report = verify_relations(&rep).map_err(err)?;
                let failures: Vec<_> = report.failures().collect();
                if let Some(f) = failures.first() {
                    return Err(format!("{alpha}: {} fails with defect {}", f.identity, f.defect_norm));
                }
            }
            shapes += 1;
        }
    }
    Ok(format!("{shapes} shapes, both builders, zero defect"))
}

fn oracle_equivalence(max_n: usize) -> Outcome {
    let mut summary = Vec::new();
    for n in 1..=max_n.min(5) {
        let report = regular_decompose(AlgebraTag::Spin, n).map_err(err)?;
        let total: usize = report.blocks.iter().map(|b| b.dimension).sum();
        let factorial: usize = (1..=n).product();
        ensure(total == factorial && report.algebra_dim == factorial, || format!("n={n}: blocks sum to {total}"))?;
        let shapes = strict_partitions(n);
        let labels: BTreeSet<String> = report.blocks.iter().filter_map(|b| b.label.clone()).collect();
        let expected: BTreeSet<String> = shapes.iter().map(|s| s.to_string()).collect();
        ensure(labels == expected && report.blocks.len() == shapes.len(), || format!("n={n}: block labels {labels:?}"))?;
        for alpha in &shapes {
            let block = report.blocks.iter().find(|b| b.label.as_deref() == Some(&alpha.to_string())).expect("labeled");
            let rep = build_rep_plain(alpha).map_err(err)?;
            let class = classify_rep(&rep).map_err(err)?;
            ensure(class.block_type == block.block_type, || {
                format!("{alpha}: regular block {} but seminormal rep {}", block.block_type, class.block_type)
            })?;
            let mut tab: Vec<Vec<u64>> = standard_tableaux(alpha).iter().map(|t| spectrum_vector(t).a).collect();
            tab.sort();
            ensure(block.spectrum.as_ref() == Some(&tab), || format!("{alpha}: block spectrum {:?}", block.spectrum))?;
        }
        let types: Vec<String> = report.blocks.iter().map(|b| b.block_type.to_string()).collect();
        summary.push(format!("n={n}: {}", types.join("+")));
    }
    for n in 1..=max_n.min(4) {
        let report = regular_decompose(AlgebraTag::CliffordTensor, n).map_err(err)?;
        for block in &report.blocks {
            let label = block.label.as_ref().ok_or("unlabeled tensor block")?;
            let alpha = crate::shiftedcomb::StrictPartition::parse(label).map_err(err)?;
            let class = classify_rep(&build_rep_clifford_tensor(&alpha).map_err(err)?).map_err(err)?;
            ensure(class.block_type == block.block_type, || {
                format!("tensor {alpha}: regular block {} but seminormal rep {}", block.block_type, class.block_type)
            })?;
        }
    }
    Ok(summary.join("; "))
}

fn spectrum_theorem(max_n: usize) -> Outcome {
    let mut seen: BTreeMap<Vec<u64>, String> = BTreeMap::new();
    let mut count = 0;
    for n in 1..=max_n.min(6) {
        for alpha in strict_partitions(n) {
            let mut expected: Vec<Vec<u64>> = standard_tableaux(&alpha).iter().map(|t| spectrum_vector(t).a).collect();
            expected.sort();
            let mut reps = vec![build_rep_plain(&alpha).map_err(err)?];
            if n <= 5 {
                reps.push(build_rep_clifford_tensor(&alpha).map_err(err)?);
            }
            for rep in reps {
                let mut found = spectrum_of(&rep).map_err(err)?;
                found.sort();
                ensure(found == expected, || format!("{alpha} ({}): spectrum {found:?}", rep.algebra))?;
            }
            for a in &expected {
                ensure(a.iter().all(|&x| triangular_root(x).is_some()), || format!("{alpha}: {a:?} is not half-triangular"))?;
                if let Some(other) = seen.insert(a.clone(), alpha.to_string()) {
                    return Err(format!("{a:?} occurs for {other} and {alpha}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} joint eigenvalues, all simple and shape-disjoint"))
}

fn identity_suites(max_n: usize) -> Outcome {
    let mut checks = 0;
    let mut last_note = String::new();
    for n in 2..=max_n.min(5) {
        let r = verify_identity_suite(n).map_err(err)?;
        if let Some(f) = r.failures().next() {
            return Err(format!("n={n}: {} at {:?}", f.identity, f.indices));
        }
        checks += r.checks.len();
        if let Some(note) = r.notes.iter().find(|s| s.starts_with("pi_i^2")) {
            last_note = format!("n={n} {note}");
        }
        if n >= 3 {
            let e = even_presentation_check(n).map_err(err)?;
            ensure(e.all_pass, || format!("n={n}: even presentation fails: {:?}", e.notes))?;
            checks += e.checks.len();
        }
    }
    Ok(format!("{checks} identities; {last_note}"))
}

fn image_type(a: &GradedMatrixAlgebra) -> Result<BlockType, String> {
    isotypic_type(a).map(|t| t.0).map_err(err)
}

/// The two readings of the index formula for `M(n,m) (x) M(n',m')`.
pub fn tensor_index_formulas(n: usize, m: usize, n2: usize, m2: usize) -> (BlockType, BlockType) {
    let corrected = BlockType::m(n * n2 + m * m2, n * m2 + m * n2);
    let printed = BlockType::m(n * n2 + m * m2, 2 * n * m2);
    (corrected, printed)
}

/// Which index formula matches the computed classification of
/// `M(2,1) (x) M(1,2)`, the smallest instance separating them.
pub fn tensor_index_adjudication() -> Result<(BlockType, bool, bool), String> {
    let t = image_type(&graded_tensor(&m_standard(2, 1), &m_standard(1, 2)))?;
    let (corrected, printed) = tensor_index_formulas(2, 1, 1, 2);
    Ok((t, t == corrected, t == printed))
}

fn tensor_classification() -> Outcome {
    let cases = [
        ("Q(1)(x)Q(1)", graded_tensor(&q_standard(1), &q_standard(1)), BlockType::m(1, 1)),
        ("M(1,1)(x)Q(2)", graded_tensor(&m_standard(1, 1), &q_standard(2)), BlockType::Q { r: 4 }),
        ("M(1,1)(x)M(1,1)", graded_tensor(&m_standard(1, 1), &m_standard(1, 1)), BlockType::m(2, 2)),
    ];
    let mut out = Vec::new();
    for (name, alg, expected) in cases {
        let t = image_type(&alg)?;
        ensure(t == expected, || format!("{name} classifies as {t}, expected {expected}"))?;
        out.push(format!("{name}={t}"));
    }
    Ok(out.join(", "))
}

fn branching_coherence(max_n: usize) -> Outcome {
    let n = max_n.min(5);
    let comb = BranchingGraph::combinatorial(n);
    let reps = schur_branching_graph(n, GraphSource::FromReps).map_err(err)?;
    ensure(comb.vertex_set() == reps.vertex_set(), || "vertex sets differ".into())?;
    ensure(comb.edge_support() == reps.edge_support(), || "edge supports differ".into())?;
    ensure(reps.edges.iter().all(|e| e.multiplicity == 1), || "a from-reps edge has multiplicity other than 1".into())?;
    for k in 1..=n {
        let g = BranchingGraph::combinatorial(k);
        let blocks = algebra_from_graph(&g).map_err(err)?;
        let report = regular_decompose(AlgebraTag::Spin, k).map_err(err)?;
        for b in &blocks {
            let label = b.partition.to_string();
            let oracle = report.blocks.iter().find(|x| x.label.as_deref() == Some(&label)).ok_or("missing oracle block")?;
            ensure(oracle.block_type == b.block, || format!("{label}: graph gives {}, oracle {}", b.block, oracle.block_type))?;
        }
    }
    let mut flags = Vec::new();
    for k in 2..=n {
        let c = graded_centralizer(k, k - 1).map_err(err)?;
        ensure(c.is_commutative, || format!("Z(A_{k}, A_{}) is not commutative", k - 1))?;
        flags.push(format!("Z(A_{k},A_{})=dim {} commutative", k - 1, c.basis().len()));
    }
    Ok(format!("graphs agree up to n={n}; {}", flags.join(", ")))
}

fn gz_maximality(max_n: usize) -> Outcome {
    let mut out = Vec::new();
    for n in 2..=max_n.min(4) {
        let r = gz_algebras(n).map_err(err)?;
        ensure(r.maximality_flag, || format!("n={n}: even centralizer of GZ has dim {}", r.even_centralizer_dim))?;
        ensure(r.all_pass(), || format!("n={n}: GZ report {:?}", (r.sgz_equals_jm_algebra, r.sz_equals_jm_squares_algebra, r.chain_inclusions)))?;
        out.push(format!("n={n}: dim GZ {}", r.gz_basis.len()));
    }
    Ok(out.join(", "))
}

fn typo_adjudication(max_n: usize) -> Outcome {
    let mut differing = Vec::new();
    for n in 1..=max_n.min(6) {
        for alpha in strict_partitions(n) {
            let c = build_rep_variant(&alpha, false, CoefficientVariant::Corrected).map_err(err)?;
            let p = build_rep_variant(&alpha, false, CoefficientVariant::Printed).map_err(err)?;
            let cp = verify_relations(&c).map_err(err)?.all_pass;
            if c.generators == p.generators {
                ensure(cp, || format!("{alpha}: both variants fail"))?;
                continue;
            }
            let pp = verify_relations(&p).map_err(err)?.all_pass;
            ensure(cp || pp, || format!("{alpha}: neither coefficient variant passes"))?;
            differing.push(format!("{alpha}: (a-b)^2 {} / (a+b)^2 {}", pass_word(cp), pass_word(pp)));
        }
    }
    let (t, corrected, printed) = tensor_index_adjudication()?;
    ensure(corrected || printed, || format!("M(2,1)(x)M(1,2) = {t} matches neither index formula"))?;
    let variants = if differing.is_empty() {
        format!("coefficient variants coincide for n <= {}", max_n.min(6))
    } else {
        differing.join(", ")
    };
    Ok(format!(
        "{variants}; M(2,1)(x)M(1,2) = {t}: nm'+mn' {}, nm'+nm' {}",
        pass_word(corrected),
        pass_word(printed)
    ))
}

fn pass_word(b: bool) -> &'static str {
    if b {
        "passes"
    } else {
        "fails"
    }
}

fn random_number(rng: &mut StdRng) -> SqrtNumber {
    const RADICANDS: [u64; 7] = [1, 2, 3, 5, 6, 7, 10];
    let mut x = SqrtNumber::zero();
    for _ in 0..rng.random_range(0..4) {
        let d = RADICANDS[rng.random_range(0..RADICANDS.len())];
        let q = BigRational::new(BigInt::from(rng.random_range(-20i64..=20)), BigInt::from(rng.random_range(1i64..=12)));
        x += &SqrtNumber::term(d, q);
    }
    x
}

fn rational(rng: &mut StdRng) -> BigRational {
    BigRational::new(BigInt::from(rng.random_range(-30i64..=30)), BigInt::from(rng.random_range(1i64..=9)))
}

fn rational_sign(q: &BigRational) -> Sign {
    use num_traits::Signed;
    if q.is_positive() {
        Sign::Positive
    } else if q.is_negative() {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

/// Random field axioms, inverse round trips and sign decisions on values
/// `c sqrt d - e sqrt f` whose sign follows from comparing `c^2 d` and `e^2 f`.
pub fn exactnum_properties(cases: usize, seed: u64) -> Outcome {
    let mut rng = StdRng::seed_from_u64(seed);
    for k in 0..cases {
        let (x, y, z) = (random_number(&mut rng), random_number(&mut rng), random_number(&mut rng));
        ensure(&(&x + &y) + &z == &x + &(&y + &z), || format!("case {k}: addition not associative"))?;
        ensure(&(&x * &y) * &z == &x * &(&y * &z), || format!("case {k}: multiplication not associative"))?;
        ensure(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), || format!("case {k}: not distributive"))?;
        ensure(&x * &y == &y * &x && &x + &y == &y + &x, || format!("case {k}: not commutative"))?;
        ensure(x.is_normalized(), || format!("case {k}: value not normalized"))?;
        if !x.is_zero() {
            let inv = x.inverse().map_err(err)?;
            ensure((&x * &inv).is_one(), || format!("case {k}: {x} times its inverse is not 1"))?;
        }
        const RADICANDS: [u64; 6] = [1, 2, 3, 5, 6, 7];
        let (d, f) = (RADICANDS[rng.random_range(0..6)], RADICANDS[rng.random_range(0..6)]);
        let (c, e) = (rational(&mut rng), rational(&mut rng));
        let v = &SqrtNumber::term(d, c.clone()) - &SqrtNumber::term(f, e.clone());
        // Compare c sqrt d with e sqrt f through signed squares.
        let signed_sq = |q: &BigRational, r: u64| {
            let s = q * q * BigRational::from_integer(BigInt::from(r));
            if rational_sign(q) == Sign::Negative {
                -s
            } else {
                s
            }
        };
        let expected = rational_sign(&(signed_sq(&c, d) - signed_sq(&e, f)));
        ensure(v.sign() == expected, || format!("case {k}: sign of {v} computed as {:?}", v.sign()))?;
    }
    Ok(format!("{cases} random cases: field axioms, inverses and signs exact"))
}
