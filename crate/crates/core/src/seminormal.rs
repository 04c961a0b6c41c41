//! Seminormal forms: explicit matrices for the spin representations of `S_n`
//! and of `C_n (x) A_n`, in a basis adapted to the Young-Jucys-Murphy
//! elements.
//!
//! Every rep is a direct sum of blocks, one per shifted standard tableau `T`
//! of the shape. Each block is a copy of one fixed graded module of a real
//! Clifford algebra. Inside block `T` the element `pi_i` acts as
//! `sqrt(a_i(T)) g_i`, where the `g_i` are anticommuting odd involutions of
//! the Clifford module. The generator `tau_i` acts on block `T` by
//! `(pi_i - pi_{i+1}) / (a_i - a_{i+1})` and, when `i`, `i + 1` are not fused
//! in `T`, also sends block `T` into block `s_i T` by a multiple of
//! `(g_i - g_{i+1}) / sqrt 2`. For the tensor algebra the Clifford
//! generators `p_1..p_n` act on the Clifford factor of every block.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::Range;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::SqrtNumber;
use crate::gradedstruct::{
    decompose_regular, graded_tensor, isotypic_type, BlockReport, BlockType, GradedError, GradedMatrixAlgebra,
    NamedMatrix,
};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::shiftedcomb::{
    is_fused, spectrum_vector, standard_tableaux, strict_partitions, triangular, BranchingGraph, CombError,
    GraphEdge, GraphSource, GraphVertex, ShiftedTableau, StrictPartition, VertexType,
};
use crate::spinalg::{SpinError, SpinTable};

/// Largest rank accepted by the builders.
pub const MAX_BUILD_RANK: usize = 7;
/// Largest rank for the regular representation of `A_n`.
pub const MAX_REGULAR_RANK: usize = 5;
/// Largest rank for the regular representation of `C_n (x) A_n`.
pub const MAX_REGULAR_TENSOR_RANK: usize = 4;
/// Largest rank for the branching graph computed from representations.
pub const MAX_GRAPH_RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeminormalError {
    #[error("rank {n} exceeds the limit {limit} for this operation")]
    SizeLimit { n: usize, limit: usize },
    #[error("relation {identity} fails with defect {defect_norm}")]
    Relation { identity: String, defect_norm: f64 },
    #[error("neither variant of the off-diagonal coefficient satisfies the relations")]
    NoVariant,
    #[error("spectrum check failed: {0}")]
    Spectrum(String),
    #[error("malformed representation: {0}")]
    Malformed(String),
    #[error("{0} requires the tensor algebra")]
    NeedsTensor(&'static str),
    #[error(transparent)]
    Comb(#[from] CombError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Spin(#[from] SpinError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraTag {
    #[serde(rename = "A_n")]
    Spin,
    #[serde(rename = "clifford_tensor_A_n")]
    CliffordTensor,
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraTag::Spin => "A_n",
            AlgebraTag::CliffordTensor => "clifford_tensor_A_n",
        })
    }
}

/// The two readings of the coefficient on the downward off-diagonal term:
/// `1 - (a + b) / (a - b)^2` and `1 - (a + b) / (a + b)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientVariant {
    Corrected,
    Printed,
}

// ---------------------------------------------------------------------------
// Clifford modules

const PAULI_SETS: [&[&str]; 4] = [
    &["X"],
    &["ZX", "XI"],
    &["WWX", "ZXZ", "ZIX", "XII"],
    &["WWZX", "WWXI", "WZXW", "XZZZ", "IWWX", "IZXZ", "IZIX", "IXII"],
];

fn pauli(c: char) -> SparseMatrix {
    match c {
        'I' => SparseMatrix::identity(2),
        'X' => SparseMatrix::from_i64(&[vec![0, 1], vec![1, 0]]),
        'Z' => SparseMatrix::from_i64(&[vec![1, 0], vec![0, -1]]),
        'W' => SparseMatrix::from_i64(&[vec![0, -1], vec![1, 0]]),
        _ => unreachable!("unknown Pauli letter {c}"),
    }
}

fn pauli_string(s: &str) -> SparseMatrix {
    s.chars().fold(SparseMatrix::identity(1), |acc, c| acc.kron(&pauli(c)))
}

/// A real graded module of the Clifford algebra on `count` anticommuting odd
/// generators squaring to `1`. The parity operator is `Z (x) ... (x) Z`, so
/// the parity of a basis vector is the parity of its bit count.
pub fn clifford_module(count: usize) -> GradedMatrixAlgebra {
    if count == 0 {
        return GradedMatrixAlgebra::new(vec![0], Vec::new()).expect("trivial module");
    }
    if count > 8 {
        let a = clifford_module(count - 8);
        let b = clifford_module(8);
        let t = graded_tensor(&a, &b);
        let gens = t.generators().iter().enumerate().map(|(k, g)| NamedMatrix::new(format!("c{}", k + 1), g.matrix.clone())).collect();
        return GradedMatrixAlgebra::new(t.parity().to_vec(), gens).expect("homogeneous");
    }
    let k = (0..4).find(|&k| PAULI_SETS[k].len() >= count).expect("count <= 8");
    let dim = 1usize << (k + 1);
    let parity = (0..dim).map(|c| (c.count_ones() % 2) as u8).collect();
    let gens = PAULI_SETS[k][..count]
        .iter()
        .enumerate()
        .map(|(j, s)| NamedMatrix::new(format!("c{}", j + 1), pauli_string(s)))
        .collect();
    GradedMatrixAlgebra::new(parity, gens).expect("Pauli strings are homogeneous")
}

// ---------------------------------------------------------------------------
// Representations

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisLabel {
    pub tableau: Vec<Vec<usize>>,
    /// Qubits set to `1` in the Clifford factor, numbered from 1.
    pub clifford_word: Vec<usize>,
}

/// Which coefficient variants satisfy the relations for this shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildReport {
    pub selected: CoefficientVariant,
    pub corrected_passes: bool,
    pub printed_passes: bool,
    /// Whether the two variants give different matrices for this shape.
    pub variants_differ: bool,
}

/// A graded module of `A_n` or `C_n (x) A_n` in seminormal form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradedRep {
    pub algebra: AlgebraTag,
    pub n: usize,
    pub shape: StrictPartition,
    pub dim: usize,
    pub parity: Vec<u8>,
    pub generators: Vec<NamedMatrix>,
    pub basis: Vec<BasisLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub build: Option<BuildReport>,
}

/// One tableau block of a rep.
#[derive(Debug, Clone)]
pub struct RepBlock {
    pub tableau: ShiftedTableau,
    pub range: Range<usize>,
}

impl GradedRep {
    pub fn tau(&self, i: usize) -> Option<&SparseMatrix> {
        self.generator(&format!("tau_{i}"))
    }

    pub fn p(&self, i: usize) -> Option<&SparseMatrix> {
        self.generator(&format!("p_{i}"))
    }

    fn generator(&self, name: &str) -> Option<&SparseMatrix> {
        self.generators.iter().find(|g| g.name == name).map(|g| &g.matrix)
    }

    pub fn taus(&self) -> Result<Vec<SparseMatrix>, SeminormalError> {
        (1..self.n)
            .map(|i| self.tau(i).cloned().ok_or_else(|| SeminormalError::Malformed(format!("missing tau_{i}"))))
            .collect()
    }

    pub fn ps(&self) -> Result<Vec<SparseMatrix>, SeminormalError> {
        if self.algebra == AlgebraTag::Spin {
            return Ok(Vec::new());
        }
        (1..=self.n)
            .map(|i| self.p(i).cloned().ok_or_else(|| SeminormalError::Malformed(format!("missing p_{i}"))))
            .collect()
    }

    /// The rep as a graded matrix algebra on all its generators.
    pub fn to_algebra(&self) -> Result<GradedMatrixAlgebra, SeminormalError> {
        Ok(GradedMatrixAlgebra::new(self.parity.clone(), self.generators.clone())?)
    }

    /// Tableau blocks in basis order. Basis vectors of one tableau must be
    /// contiguous.
    pub fn blocks(&self) -> Result<Vec<RepBlock>, SeminormalError> {
        let mut out: Vec<RepBlock> = Vec::new();
        for (k, b) in self.basis.iter().enumerate() {
            match out.last_mut() {
                Some(last) if last.tableau.rows == b.tableau => last.range.end = k + 1,
                _ => {
                    if out.iter().any(|blk| blk.tableau.rows == b.tableau) {
                        return Err(SeminormalError::Malformed("tableau blocks are not contiguous".into()));
                    }
                    let t = ShiftedTableau::new(self.shape.clone(), b.tableau.clone())?;
                    out.push(RepBlock { tableau: t, range: k..k + 1 });
                }
            }
        }
        Ok(out)
    }

    fn check_shape(&self) -> Result<(), SeminormalError> {
        if self.shape.size() != self.n || self.parity.len() != self.dim || self.basis.len() != self.dim {
            return Err(SeminormalError::Malformed("inconsistent rank, dimension or basis length".into()));
        }
        for g in &self.generators {
            if g.matrix.nrows() != self.dim || g.matrix.ncols() != self.dim {
                return Err(SeminormalError::Malformed(format!("generator {} has the wrong size", g.name)));
            }
        }
        Ok(())
    }

    /// Copy with the first nonzero entry of one generator negated.
    pub fn with_flipped_entry(&self, generator: usize) -> Self {
        let mut out = self.clone();
        if let Some(g) = out.generators.get_mut(generator) {
            let mut trips: Vec<(usize, usize, SqrtNumber)> = g.matrix.triplets().map(|(r, c, x)| (r, c, x.clone())).collect();
            if let Some(t) = trips.first_mut() {
                t.2 = -&t.2;
            }
            g.matrix = SparseMatrix::from_triplets(self.dim, self.dim, trips);
        }
        out.build = None;
        out
    }
}

fn int(x: i64) -> SqrtNumber {
    SqrtNumber::from_integer(x)
}

fn sqrt2_inv() -> SqrtNumber {
    SqrtNumber::sqrt_u64(2).inverse().expect("nonzero")
}

/// Place `block` at block position `(row, col)` of a matrix with square
/// blocks of size `d`.
fn push_block(trips: &mut Vec<(usize, usize, SqrtNumber)>, block: &SparseMatrix, row: usize, col: usize, d: usize) {
    trips.extend(block.triplets().map(|(r, c, x)| (row * d + r, col * d + c, x.clone())));
}

fn clifford_word(c: usize, bits: usize) -> Vec<usize> {
    (0..bits).filter(|&q| (c >> (bits - 1 - q)) & 1 == 1).map(|q| q + 1).collect()
}

fn assemble(alpha: &StrictPartition, tensor: bool, variant: CoefficientVariant) -> Result<GradedRep, SeminormalError> {
    let n = alpha.size();
    if n > MAX_BUILD_RANK {
        return Err(SeminormalError::SizeLimit { n, limit: MAX_BUILD_RANK });
    }
    if n == 0 {
        return Err(SeminormalError::Malformed("empty shape".into()));
    }
    let tableaux = standard_tableaux(alpha);
    let row_reading = ShiftedTableau::row_reading(alpha);
    let reading_label: BTreeMap<(usize, usize), usize> =
        row_reading.cells().into_iter().enumerate().map(|(k, cell)| (cell, k + 1)).collect();
    let index: BTreeMap<&Vec<Vec<usize>>, usize> = tableaux.iter().enumerate().map(|(k, t)| (&t.rows, k)).collect();

    let g_count = n - 1;
    let p_count = if tensor { n } else { 0 };
    let cl = clifford_module(p_count + g_count);
    let d = cl.dim();
    let bits = d.trailing_zeros() as usize;
    let gens = cl.generators();
    let zero = SparseMatrix::zeros(d, d);
    // g_1 is never needed: a_1 = 0 in every tableau.
    let g = |i: usize| if i < 2 { &zero } else { &gens[p_count + i - 2].matrix };

    let spectra: Vec<Vec<u64>> = tableaux.iter().map(|t| spectrum_vector(t).a).collect();
    let cells: Vec<Vec<(usize, usize)>> = tableaux.iter().map(ShiftedTableau::cells).collect();
    let r2 = sqrt2_inv();
    let nt = tableaux.len();
    let dim = nt * d;

    let mut generators = Vec::new();
    for i in 1..n {
        let mut trips = Vec::new();
        for (t, tab) in tableaux.iter().enumerate() {
            let (a, b) = (spectra[t][i - 1], spectra[t][i]);
            let diff = int(a as i64 - b as i64);
            let inv = diff.inverse().map_err(|_| SeminormalError::Spectrum(format!("a_{i} = a_{} in {tab}", i + 1)))?;
            let diag = g(i).scale(&SqrtNumber::sqrt_u64(a)).sub(&g(i + 1).scale(&SqrtNumber::sqrt_u64(b))).scale(&inv);
            push_block(&mut trips, &diag, t, t, d);
            if is_fused(a, b) {
                continue;
            }
            let partner = tab
                .swap(i)
                .ok_or_else(|| SeminormalError::Spectrum(format!("split pair at {i} in {tab} has no partner tableau")))?;
            let t2 = index[&partner.rows];
            let up = reading_label[&cells[t][i - 1]] < reading_label[&cells[t][i]];
            let c = if up {
                SqrtNumber::one()
            } else {
                let num = BigRational::from_integer(((a + b) as i64).into());
                let den = match variant {
                    CoefficientVariant::Corrected => (a as i64 - b as i64).pow(2),
                    CoefficientVariant::Printed => ((a + b) as i64).pow(2),
                };
                SqrtNumber::one() - SqrtNumber::from_rational(num / BigRational::from_integer(den.into()))
            };
            let off = g(i).sub(g(i + 1)).scale(&(&c * &r2));
            push_block(&mut trips, &off, t2, t, d);
        }
        generators.push(NamedMatrix::new(format!("tau_{i}"), SparseMatrix::from_triplets(dim, dim, trips)));
    }
    let ident = SparseMatrix::identity(nt);
    for k in 0..p_count {
        generators.push(NamedMatrix::new(format!("p_{}", k + 1), ident.kron(&gens[k].matrix)));
    }
    let mut parity = Vec::with_capacity(dim);
    let mut basis = Vec::with_capacity(dim);
    for tab in &tableaux {
        for c in 0..d {
            parity.push(cl.parity()[c]);
            basis.push(BasisLabel { tableau: tab.rows.clone(), clifford_word: clifford_word(c, bits) });
        }
    }
    Ok(GradedRep {
        algebra: if tensor { AlgebraTag::CliffordTensor } else { AlgebraTag::Spin },
        n,
        shape: alpha.clone(),
        dim,
        parity,
        generators,
        basis,
        build: None,
    })
}

fn build(alpha: &StrictPartition, tensor: bool) -> Result<GradedRep, SeminormalError> {
    let corrected = assemble(alpha, tensor, CoefficientVariant::Corrected)?;
    let printed = assemble(alpha, tensor, CoefficientVariant::Printed)?;
    let corrected_report = verify_relations(&corrected)?;
    let variants_differ = corrected.generators != printed.generators;
    let printed_passes = if variants_differ { verify_relations(&printed)?.all_pass } else { corrected_report.all_pass };
    let corrected_passes = corrected_report.all_pass;
    let (mut rep, report) = if corrected_passes {
        (corrected, corrected_report)
    } else if printed_passes {
        let r = verify_relations(&printed)?;
        (printed, r)
    } else {
        let first = corrected_report.failures().next().cloned();
        return Err(match first {
            Some(f) => SeminormalError::Relation { identity: f.identity, defect_norm: f.defect_norm },
            None => SeminormalError::NoVariant,
        });
    };
    debug_assert!(report.all_pass);
    rep.build = Some(BuildReport {
        selected: if corrected_passes { CoefficientVariant::Corrected } else { CoefficientVariant::Printed },
        corrected_passes,
        printed_passes,
        variants_differ,
    });
    let found = spectrum_of(&rep)?;
    let expected: Vec<Vec<u64>> = standard_tableaux(alpha).iter().map(|t| spectrum_vector(t).a).collect();
    if found != expected {
        return Err(SeminormalError::Spectrum(format!("block spectra {found:?} differ from tableau spectra {expected:?}")));
    }
    Ok(rep)
}

/// Seminormal form of the spin module of shape `alpha` over `A_n`.
pub fn build_rep_plain(alpha: &StrictPartition) -> Result<GradedRep, SeminormalError> {
    build(alpha, false)
}

/// Seminormal form over `C_n (x) A_n`, with Clifford generators `p_1..p_n`.
pub fn build_rep_clifford_tensor(alpha: &StrictPartition) -> Result<GradedRep, SeminormalError> {
    build(alpha, true)
}

/// Build a plain rep with a chosen coefficient variant and no verification.
pub fn build_rep_variant(
    alpha: &StrictPartition,
    tensor: bool,
    variant: CoefficientVariant,
) -> Result<GradedRep, SeminormalError> {
    assemble(alpha, tensor, variant)
}

// ---------------------------------------------------------------------------
// Relations

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub identity: String,
    pub status: CheckStatus,
    pub defect_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
    pub all_pass: bool,
}

impl RelationReport {
    fn new() -> Self {
        RelationReport { checks: Vec::new(), all_pass: true }
    }

    fn record(&mut self, identity: String, defect: &SparseMatrix) {
        let pass = defect.is_zero();
        self.all_pass &= pass;
        self.checks.push(RelationCheck {
            identity,
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            defect_norm: defect.max_abs_f64(),
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }
}

/// `tau_{ij}` for `i < j` from `tau_{i,j} = -tau_{i,j-1} tau_{j-1} tau_{i,j-1}`,
/// assembled into `pi_1..pi_n` (index `k - 1` holds `pi_k`).
pub fn jm_matrices(taus: &[SparseMatrix], dim: usize) -> Vec<SparseMatrix> {
    let n = taus.len() + 1;
    let mut pi = vec![SparseMatrix::zeros(dim, dim); n];
    for i in 1..n {
        let mut t = taus[i - 1].clone();
        pi[i] = pi[i].add(&t);
        for j in i + 2..=n {
            t = t.mul(&taus[j - 2]).mul(&t).neg();
            pi[j - 1] = pi[j - 1].add(&t);
        }
    }
    pi
}

/// Exact check of the defining relations of `A_n` on the `tau_i`, the
/// Clifford relations on the `p_i`, and the commutation of the elements
/// `x_i = p_i pi_i / sqrt 2` when Clifford generators are present.
pub fn verify_relations(rep: &GradedRep) -> Result<RelationReport, SeminormalError> {
    rep.check_shape()?;
    let taus = rep.taus()?;
    let ps = rep.ps()?;
    let dim = rep.dim;
    let one = SparseMatrix::identity(dim);
    let j = SparseMatrix::from_triplets(dim, dim, rep.parity.iter().enumerate().map(|(i, &p)| (i, i, int(if p == 0 { 1 } else { -1 }))));
    let mut report = RelationReport::new();
    let odd = |m: &SparseMatrix| j.mul(m).add(&m.mul(&j));
    for (k, t) in taus.iter().enumerate() {
        let i = k + 1;
        report.record(format!("tau_{i} is odd"), &odd(t));
        report.record(format!("tau_{i}^2 = 1"), &t.mul(t).sub(&one));
        if let Some(u) = taus.get(k + 1) {
            let x = t.mul(u);
            report.record(format!("(tau_{i} tau_{})^3 = 1", i + 1), &x.mul(&x).mul(&x).sub(&one));
        }
        for (l, u) in taus.iter().enumerate().skip(k + 2) {
            let x = t.mul(u);
            report.record(format!("(tau_{i} tau_{})^2 = -1", l + 1), &x.mul(&x).add(&one));
        }
        for (l, p) in ps.iter().enumerate() {
            report.record(format!("tau_{i} p_{} = -p_{} tau_{i}", l + 1, l + 1), &t.mul(p).add(&p.mul(t)));
        }
    }
    for (k, p) in ps.iter().enumerate() {
        report.record(format!("p_{} is odd", k + 1), &odd(p));
        report.record(format!("p_{}^2 = 1", k + 1), &p.mul(p).sub(&one));
        for (l, q) in ps.iter().enumerate().skip(k + 1) {
            report.record(format!("p_{} p_{} = -p_{} p_{}", k + 1, l + 1, l + 1, k + 1), &p.mul(q).add(&q.mul(p)));
        }
    }
    if !ps.is_empty() {
        let pi = jm_matrices(&taus, dim);
        let r2 = sqrt2_inv();
        let x: Vec<SparseMatrix> = ps.iter().zip(&pi).map(|(p, q)| p.mul(q).scale(&r2)).collect();
        for a in 0..x.len() {
            for b in a + 1..x.len() {
                report.record(format!("x_{} x_{} = x_{} x_{}", a + 1, b + 1, b + 1, a + 1), &x[a].mul(&x[b]).sub(&x[b].mul(&x[a])));
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Spectra and local structure

/// Value of `m` on block `range` when `m` acts there as a scalar and
/// vanishes between that block and the rest.
fn block_scalar(m: &SparseMatrix, range: &Range<usize>) -> Option<SqrtNumber> {
    let c = m.get(range.start, range.start);
    for r in range.clone() {
        for (col, x) in m.row(r).entries() {
            let ok = if *col == r { *x == c } else { x.is_zero() };
            if !ok {
                return None;
            }
        }
        if c.is_zero() != m.row(r).get(r).is_none() {
            return None;
        }
    }
    Some(c)
}

fn nonnegative_integer(x: &SqrtNumber) -> Option<u64> {
    let q = x.to_rational()?;
    if !q.is_integer() {
        return None;
    }
    u64::try_from(q.to_integer()).ok()
}

/// Joint eigenvalues of `pi_1^2, ..., pi_n^2` on each tableau block, in
/// block order. Fails unless every `pi_k^2` is a scalar on every block.
pub fn spectrum_of(rep: &GradedRep) -> Result<Vec<Vec<u64>>, SeminormalError> {
    let blocks = rep.blocks()?;
    let pi = jm_matrices(&rep.taus()?, rep.dim);
    let squares: Vec<SparseMatrix> = pi.iter().map(|p| p.mul(p)).collect();
    let mut out = vec![Vec::with_capacity(rep.n); blocks.len()];
    for (k, sq) in squares.iter().enumerate() {
        let tr = sq.transpose();
        for (b, blk) in blocks.iter().enumerate() {
            let c = block_scalar(sq, &blk.range)
                .filter(|_| columns_confined(&tr, &blk.range))
                .ok_or_else(|| SeminormalError::Spectrum(format!("pi_{}^2 is not a scalar on block {}", k + 1, blk.tableau)))?;
            let v = nonnegative_integer(&c)
                .ok_or_else(|| SeminormalError::Spectrum(format!("pi_{}^2 acts on block {} by {c}", k + 1, blk.tableau)))?;
            out[b].push(v);
        }
    }
    Ok(out)
}

/// Whether every column in `range` of the matrix whose transpose is `tr`
/// has its support inside `range`.
fn columns_confined(tr: &SparseMatrix, range: &Range<usize>) -> bool {
    range.clone().all(|c| tr.row(c).entries().iter().all(|(r, _)| range.contains(r)))
}

/// Within every block, the `pi_i` with `a_i != 0` pairwise anticommute and
/// square to nonzero scalars.
pub fn gz_clifford_check(rep: &GradedRep) -> Result<bool, SeminormalError> {
    let blocks = rep.blocks()?;
    let pi = jm_matrices(&rep.taus()?, rep.dim);
    for a in 0..pi.len() {
        for b in a + 1..pi.len() {
            if !pi[a].mul(&pi[b]).add(&pi[b].mul(&pi[a])).is_zero() {
                return Ok(false);
            }
        }
    }
    for blk in &blocks {
        for p in &pi {
            let sq = p.mul(p);
            if block_scalar(&sq, &blk.range).is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairCase {
    Fused,
    Split,
}

/// The local structure of `tau_i` on one tableau block, through
/// `Delta = p^2 + q^2 - (p^2 - q^2)^2` with `p = pi_i`, `q = pi_{i+1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalPairAnalysis {
    pub position: usize,
    pub tableau: Vec<Vec<usize>>,
    pub pair: (u64, u64),
    pub delta: SqrtNumber,
    pub case: PairCase,
    /// Fused: `tau_i` acts on the block as `(pi_i - pi_{i+1}) / (a_i - a_{i+1})`.
    /// Split: a block with `a_i`, `a_{i+1}` exchanged exists and `tau_i` reaches it.
    pub consistent: bool,
    pub partner: Option<Vec<Vec<usize>>>,
}

pub fn analyze_local_pair(rep: &GradedRep, i: usize) -> Result<Vec<LocalPairAnalysis>, SeminormalError> {
    if i == 0 || i >= rep.n {
        return Err(SeminormalError::Malformed(format!("position {i} out of range for rank {}", rep.n)));
    }
    let blocks = rep.blocks()?;
    let spectra = spectrum_of(rep)?;
    let taus = rep.taus()?;
    let pi = jm_matrices(&taus, rep.dim);
    let (p, q) = (&pi[i - 1], &pi[i]);
    let (p2, q2) = (p.mul(p), q.mul(q));
    let diff = p2.sub(&q2);
    let delta = p2.add(&q2).sub(&diff.mul(&diff));
    let tau = &taus[i - 1];
    let ratio = p.sub(q);
    let mut out = Vec::new();
    for (b, blk) in blocks.iter().enumerate() {
        let (a1, a2) = (spectra[b][i - 1], spectra[b][i]);
        let dval = block_scalar(&delta, &blk.range)
            .ok_or_else(|| SeminormalError::Spectrum(format!("Delta is not a scalar on block {}", blk.tableau)))?;
        let case = if dval.is_zero() { PairCase::Fused } else { PairCase::Split };
        let cols: Vec<usize> = blk.range.clone().collect();
        let rows: Vec<usize> = (0..rep.dim).collect();
        let tau_cols = tau.submatrix(&rows, &cols);
        let (consistent, partner) = match case {
            PairCase::Fused => {
                let inv = int(a1 as i64 - a2 as i64).inverse().map_err(|_| SeminormalError::Spectrum("a_i = a_{i+1}".into()))?;
                let expected = ratio.submatrix(&rows, &cols).scale(&inv);
                (tau_cols == expected, None)
            }
            PairCase::Split => {
                let mut swapped = spectra[b].clone();
                swapped.swap(i - 1, i);
                let found = spectra.iter().position(|s| *s == swapped);
                let reaches = found.is_some_and(|t| {
                    let r = &blocks[t].range;
                    tau_cols.triplets().any(|(row, _, _)| r.contains(&row))
                });
                (reaches, found.map(|t| blocks[t].tableau.rows.clone()))
            }
        };
        out.push(LocalPairAnalysis {
            position: i,
            tableau: blk.tableau.rows.clone(),
            pair: (a1, a2),
            delta: dval,
            case,
            consistent: consistent && (case == PairCase::Fused) == is_fused(a1, a2),
            partner,
        });
    }
    Ok(out)
}

/// The diagonal part `(pi_i - pi_{i+1}) / (pi_i^2 - pi_{i+1}^2)`, evaluated
/// block by block.
fn diagonal_part(rep: &GradedRep, pi: &[SparseMatrix], spectra: &[Vec<u64>], i: usize) -> Result<SparseMatrix, SeminormalError> {
    let blocks = rep.blocks()?;
    let mut scale = Vec::with_capacity(rep.dim);
    for (b, blk) in blocks.iter().enumerate() {
        let (a1, a2) = (spectra[b][i - 1], spectra[b][i]);
        let inv = int(a1 as i64 - a2 as i64)
            .inverse()
            .map_err(|_| SeminormalError::Spectrum(format!("a_{i} = a_{} on block {}", i + 1, blk.tableau)))?;
        scale.extend(blk.range.clone().map(|c| (c, c, inv.clone())));
    }
    let s = SparseMatrix::from_triplets(rep.dim, rep.dim, scale);
    Ok(pi[i - 1].sub(&pi[i]).mul(&s))
}

/// `P_{s_i} = -(p_i - p_{i+1}) / sqrt 2 * (tau_i - (pi_i - pi_{i+1}) / (pi_i^2 - pi_{i+1}^2))`.
pub fn intertwiner_p(i: usize, rep: &GradedRep) -> Result<SparseMatrix, SeminormalError> {
    if rep.algebra != AlgebraTag::CliffordTensor {
        return Err(SeminormalError::NeedsTensor("intertwiner_p"));
    }
    if i == 0 || i >= rep.n {
        return Err(SeminormalError::Malformed(format!("position {i} out of range for rank {}", rep.n)));
    }
    let taus = rep.taus()?;
    let pi = jm_matrices(&taus, rep.dim);
    let spectra = spectrum_of(rep)?;
    let d = diagonal_part(rep, &pi, &spectra, i)?;
    let ps = rep.ps()?;
    let left = ps[i - 1].sub(&ps[i]).scale(&sqrt2_inv()).neg();
    Ok(left.mul(&taus[i - 1].sub(&d)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntertwinerCheck {
    pub position: usize,
    /// `pi_i^2 P = P pi_{i+1}^2`.
    pub squares_swap: bool,
    /// `P pi_k = pi_{s_i(k)} P` for every `k`.
    pub conjugates_pi: bool,
    /// Each block is sent into the block of the swapped tableau, or to zero
    /// when the swap is not standard.
    pub support_ok: bool,
}

pub fn check_intertwiners(rep: &GradedRep) -> Result<Vec<IntertwinerCheck>, SeminormalError> {
    let taus = rep.taus()?;
    let pi = jm_matrices(&taus, rep.dim);
    let sq: Vec<SparseMatrix> = pi.iter().map(|p| p.mul(p)).collect();
    let blocks = rep.blocks()?;
    let index: BTreeMap<&Vec<Vec<usize>>, usize> = blocks.iter().enumerate().map(|(k, b)| (&b.tableau.rows, k)).collect();
    let mut out = Vec::new();
    for i in 1..rep.n {
        let p = intertwiner_p(i, rep)?;
        let squares_swap = sq[i - 1].mul(&p) == p.mul(&sq[i]);
        let conjugates_pi = (1..=rep.n).all(|k| {
            let sk = if k == i { i + 1 } else if k == i + 1 { i } else { k };
            p.mul(&pi[k - 1]) == pi[sk - 1].mul(&p)
        });
        let tr = p.transpose();
        let support_ok = blocks.iter().all(|blk| {
            let target = blk.tableau.swap(i).map(|t| blocks[index[&t.rows]].range.clone());
            blk.range.clone().all(|c| {
                tr.row(c).entries().iter().all(|(r, _)| target.as_ref().is_some_and(|t| t.contains(r)))
            })
        });
        out.push(IntertwinerCheck { position: i, squares_swap, conjugates_pi, support_ok });
    }
    Ok(out)
}

/// `Q_{s_i} = (tau_i - D) U` with `U = pi_i / sqrt a_i - pi_{i+1} / sqrt a_{i+1}`
/// when `a_i a_{i+1} != 0`, and `U = (pi_i + pi_{i+1}) / (sqrt a_i + sqrt a_{i+1})`
/// otherwise, evaluated block by block.
pub fn intertwiner_q(i: usize, rep: &GradedRep) -> Result<SparseMatrix, SeminormalError> {
    if i == 0 || i >= rep.n {
        return Err(SeminormalError::Malformed(format!("position {i} out of range for rank {}", rep.n)));
    }
    let taus = rep.taus()?;
    let pi = jm_matrices(&taus, rep.dim);
    let spectra = spectrum_of(rep)?;
    let d = diagonal_part(rep, &pi, &spectra, i)?;
    let blocks = rep.blocks()?;
    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    for (b, blk) in blocks.iter().enumerate() {
        let (a1, a2) = (spectra[b][i - 1], spectra[b][i]);
        let (r1, r2) = (SqrtNumber::sqrt_u64(a1), SqrtNumber::sqrt_u64(a2));
        let (c1, c2) = if a1 * a2 != 0 {
            (r1.inverse().expect("nonzero"), -&r2.inverse().expect("nonzero"))
        } else {
            let inv = (&r1 + &r2).inverse().map_err(|_| SeminormalError::Spectrum("a_i = a_{i+1} = 0".into()))?;
            (inv.clone(), inv)
        };
        for c in blk.range.clone() {
            s1.push((c, c, c1.clone()));
            s2.push((c, c, c2.clone()));
        }
    }
    let s1 = SparseMatrix::from_triplets(rep.dim, rep.dim, s1);
    let s2 = SparseMatrix::from_triplets(rep.dim, rep.dim, s2);
    let u = pi[i - 1].mul(&s1).add(&pi[i].mul(&s2));
    Ok(taus[i - 1].sub(&d).mul(&u))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QIndependenceReport {
    pub shape: StrictPartition,
    /// Tableaux reached from the row-reading tableau by more than one
    /// shortest chain of standard swaps.
    pub tableaux_with_several_paths: usize,
    pub paths_compared: usize,
    /// The braid relation `Q_i Q_{i+1} Q_i = Q_{i+1} Q_i Q_{i+1}` on the whole space.
    pub braid_relation_holds: bool,
    /// All shortest paths to a tableau give the same `Q_T` on the row-reading block.
    pub independent: bool,
}

/// Compare `Q_T = Q_{s_{i1}} ... Q_{s_{il}}` on the row-reading block across
/// all shortest chains of standard swaps (at most `path_cap` per tableau).
pub fn check_q_independence(rep: &GradedRep, path_cap: usize) -> Result<QIndependenceReport, SeminormalError> {
    let blocks = rep.blocks()?;
    let q: Vec<SparseMatrix> = (1..rep.n).map(|i| intertwiner_q(i, rep)).collect::<Result<_, _>>()?;
    let index: BTreeMap<Vec<Vec<usize>>, usize> = blocks.iter().enumerate().map(|(k, b)| (b.tableau.rows.clone(), k)).collect();
    let nb = blocks.len();
    // Shortest-path DAG from block 0 (the row-reading tableau).
    let mut dist = vec![usize::MAX; nb];
    let mut preds: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nb];
    dist[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(b) = queue.pop_front() {
        for i in 1..rep.n {
            if let Some(t) = blocks[b].tableau.swap(i) {
                let c = index[&t.rows];
                if dist[c] == usize::MAX {
                    dist[c] = dist[b] + 1;
                    queue.push_back(c);
                }
                if dist[c] == dist[b] + 1 {
                    preds[c].push((b, i));
                }
            }
        }
    }
    fn paths(b: usize, preds: &[Vec<(usize, usize)>], cap: usize) -> Vec<Vec<usize>> {
        if b == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for &(p, i) in &preds[b] {
            for mut w in paths(p, preds, cap) {
                w.push(i);
                out.push(w);
                if out.len() >= cap {
                    return out;
                }
            }
        }
        out
    }
    let rows: Vec<usize> = (0..rep.dim).collect();
    let cols: Vec<usize> = blocks[0].range.clone().collect();
    let start = SparseMatrix::identity(rep.dim).submatrix(&rows, &cols);
    let mut several = 0;
    let mut compared = 0;
    let mut independent = true;
    for b in 1..nb {
        if dist[b] == usize::MAX {
            independent = false;
            continue;
        }
        let ws = paths(b, &preds, path_cap.max(1));
        if ws.len() > 1 {
            several += 1;
        }
        let mut first: Option<SparseMatrix> = None;
        for w in ws {
            // The last swap applied is the leftmost factor.
            let m = w.iter().fold(start.clone(), |acc, &i| q[i - 1].mul(&acc));
            compared += 1;
            match &first {
                None => first = Some(m),
                Some(f) => independent &= *f == m,
            }
        }
        independent &= first.is_some_and(|m| !m.is_zero());
    }
    let braid_relation_holds = (0..q.len().saturating_sub(1)).all(|k| {
        let (a, b) = (&q[k], &q[k + 1]);
        a.mul(b).mul(a) == b.mul(a).mul(b)
    });
    Ok(QIndependenceReport {
        shape: rep.shape.clone(),
        tableaux_with_several_paths: several,
        paths_compared: compared,
        braid_relation_holds,
        independent,
    })
}

// ---------------------------------------------------------------------------
// Classification and branching

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepClass {
    /// Type of the simple algebra the rep's image is isomorphic to.
    pub block_type: BlockType,
    /// Number of simple graded modules (of either parity) in the rep.
    pub copies: usize,
}

pub fn classify_rep(rep: &GradedRep) -> Result<RepClass, SeminormalError> {
    let (block_type, copies) = isotypic_type(&rep.to_algebra()?)?;
    Ok(RepClass { block_type, copies })
}

fn vertex_type(t: &BlockType) -> VertexType {
    if t.is_q() {
        VertexType::Q
    } else {
        VertexType::M
    }
}

/// One isotypic component of the restriction to the next smaller algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchComponent {
    pub partition: StrictPartition,
    #[serde(rename = "type")]
    pub kind: VertexType,
    pub block_type: BlockType,
    pub dimension: usize,
    /// Copies of the simple graded module (either parity) in the restriction
    /// of one simple module of the rep's shape.
    pub raw_multiplicity: usize,
    /// Multiplicity with each antipodal pair counted once below a `Q` vertex.
    pub multiplicity: usize,
}

fn content_sum(p: &StrictPartition) -> u64 {
    ShiftedTableau::row_reading(p).contents().into_iter().map(triangular).sum()
}

/// Restrict to the subalgebra generated by `tau_1..tau_{n-2}` (and
/// `p_1..p_{n-1}` for the tensor algebra). Isotypic components are the
/// eigenspaces of `pi_1^2 + ... + pi_{n-1}^2`, which is central there.
pub fn restrict_and_branch(rep: &GradedRep, class: Option<RepClass>) -> Result<Vec<BranchComponent>, SeminormalError> {
    let n = rep.n;
    if n < 2 {
        return Err(SeminormalError::Malformed("restriction needs rank at least 2".into()));
    }
    let class = match class {
        Some(c) => c,
        None => classify_rep(rep)?,
    };
    let taus = rep.taus()?;
    let ps = rep.ps()?;
    let pi = jm_matrices(&taus, rep.dim);
    let casimir = pi[..n - 1].iter().fold(SparseMatrix::zeros(rep.dim, rep.dim), |acc, p| acc.add(&p.mul(p)));
    let blocks = rep.blocks()?;
    let tr = casimir.transpose();
    let mut groups: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for blk in &blocks {
        let v = block_scalar(&casimir, &blk.range)
            .filter(|_| columns_confined(&tr, &blk.range))
            .and_then(|c| nonnegative_integer(&c))
            .ok_or_else(|| SeminormalError::Spectrum(format!("restricted Casimir is not scalar on block {}", blk.tableau)))?;
        groups.entry(v).or_default().extend(blk.range.clone());
    }
    let mut gens: Vec<NamedMatrix> = taus[..n - 2].iter().enumerate().map(|(k, t)| NamedMatrix::new(format!("tau_{}", k + 1), t.clone())).collect();
    if !ps.is_empty() {
        gens.extend(ps[..n - 1].iter().enumerate().map(|(k, p)| NamedMatrix::new(format!("p_{}", k + 1), p.clone())));
    }
    let shapes = strict_partitions(n - 1);
    let mut out = Vec::new();
    for (value, idx) in groups {
        let beta: Vec<&StrictPartition> = shapes.iter().filter(|s| content_sum(s) == value).collect();
        let [beta] = beta.as_slice() else {
            return Err(SeminormalError::Spectrum(format!("eigenvalue {value} does not identify a shape of {}", n - 1)));
        };
        let inside: BTreeSet<usize> = idx.iter().copied().collect();
        let mut sub = Vec::new();
        for g in &gens {
            let gt = g.matrix.transpose();
            if !idx.iter().all(|&c| gt.row(c).entries().iter().all(|(r, _)| inside.contains(r))) {
                return Err(SeminormalError::Spectrum(format!("{} does not preserve the component of {beta}", g.name)));
            }
            sub.push(NamedMatrix::new(g.name.clone(), g.matrix.submatrix(&idx, &idx)));
        }
        let parity = idx.iter().map(|&i| rep.parity[i]).collect();
        let alg = GradedMatrixAlgebra::new(parity, sub)?;
        let (bt, count) = isotypic_type(&alg)?;
        if count % class.copies != 0 {
            return Err(SeminormalError::Spectrum(format!(
                "component of {beta} has {count} simple constituents, not a multiple of {}",
                class.copies
            )));
        }
        let raw = count / class.copies;
        let kind = vertex_type(&bt);
        let multiplicity = if kind == VertexType::M && class.block_type.is_q() { raw / 2 } else { raw };
        out.push(BranchComponent {
            partition: (*beta).clone(),
            kind,
            block_type: bt,
            dimension: idx.len(),
            raw_multiplicity: raw,
            multiplicity,
        });
    }
    out.sort_by(|a, b| a.partition.cmp(&b.partition));
    Ok(out)
}

/// The Schur graph with vertex types from classified plain reps and edges
/// from their restrictions.
pub fn branching_graph_from_reps(n: usize) -> Result<BranchingGraph, SeminormalError> {
    if n > MAX_GRAPH_RANK {
        return Err(SeminormalError::SizeLimit { n, limit: MAX_GRAPH_RANK });
    }
    let mut levels = vec![vec![GraphVertex { partition: StrictPartition::empty(), kind: VertexType::M }]];
    let mut edges = Vec::new();
    for k in 1..=n {
        let mut level = Vec::new();
        for (to, alpha) in strict_partitions(k).into_iter().enumerate() {
            let rep = build_rep_plain(&alpha)?;
            let class = classify_rep(&rep)?;
            if k == 1 {
                edges.push(GraphEdge { level: 1, from: 0, to, multiplicity: 1 });
            } else {
                let prev: &Vec<GraphVertex> = &levels[k - 1];
                for comp in restrict_and_branch(&rep, Some(class))? {
                    let from = prev
                        .iter()
                        .position(|v| v.partition == comp.partition)
                        .ok_or_else(|| SeminormalError::Spectrum(format!("unknown vertex {}", comp.partition)))?;
                    if prev[from].kind != comp.kind {
                        return Err(SeminormalError::Spectrum(format!(
                            "restriction of {alpha} classifies {} as {} but its own rep is {}",
                            comp.partition, comp.kind, prev[from].kind
                        )));
                    }
                    edges.push(GraphEdge { level: k, from, to, multiplicity: comp.multiplicity });
                }
            }
            level.push(GraphVertex { partition: alpha, kind: vertex_type(&class.block_type) });
        }
        levels.push(level);
    }
    edges.sort_by_key(|e| (e.level, e.from, e.to));
    Ok(BranchingGraph { n, source: GraphSource::FromReps, levels, edges })
}

// ---------------------------------------------------------------------------
// Regular representations

/// Left regular representation of `A_n` (basis `t_sigma` in Lehmer order) or
/// of `C_n (x) A_n` (basis `p_S (x) t_sigma`, index `S * n! + sigma`).
pub fn regular_algebra(tag: AlgebraTag, n: usize) -> Result<GradedMatrixAlgebra, SeminormalError> {
    let limit = match tag {
        AlgebraTag::Spin => MAX_REGULAR_RANK,
        AlgebraTag::CliffordTensor => MAX_REGULAR_TENSOR_RANK,
    };
    if n > limit || n == 0 {
        return Err(SeminormalError::SizeLimit { n, limit });
    }
    let table = SpinTable::get(n)?;
    let size = table.size();
    let subsets = if tag == AlgebraTag::CliffordTensor { 1usize << n } else { 1 };
    let dim = size * subsets;
    let mut parity = Vec::with_capacity(dim);
    for s in 0..subsets {
        for idx in 0..size {
            parity.push(((s.count_ones() as u8) + table.parity(idx)) % 2);
        }
    }
    let mut gens = Vec::new();
    for i in 1..n {
        let mut trips = Vec::with_capacity(dim);
        for s in 0..subsets {
            let sign_s: i64 = if s.count_ones() % 2 == 0 { 1 } else { -1 };
            for idx in 0..size {
                let (t, sign) = table.left_mul(i, idx);
                trips.push((s * size + t, s * size + idx, int(sign_s * sign as i64)));
            }
        }
        gens.push(NamedMatrix::new(format!("tau_{i}"), SparseMatrix::from_triplets(dim, dim, trips)));
    }
    if tag == AlgebraTag::CliffordTensor {
        for i in 0..n {
            let mut trips = Vec::with_capacity(dim);
            for s in 0..subsets {
                let below = (s & ((1 << i) - 1)).count_ones();
                let sign: i64 = if below % 2 == 0 { 1 } else { -1 };
                let s2 = s ^ (1 << i);
                for idx in 0..size {
                    trips.push((s2 * size + idx, s * size + idx, int(sign)));
                }
            }
            gens.push(NamedMatrix::new(format!("p_{}", i + 1), SparseMatrix::from_triplets(dim, dim, trips)));
        }
    }
    Ok(GradedMatrixAlgebra::new(parity, gens)?)
}

/// Blocks of the regular representation, each labeled by the shape whose
/// content sum is the eigenvalue of `pi_1^2 + ... + pi_n^2` there, and by
/// the joint `pi^2`-spectrum found on it.
pub fn regular_decompose(tag: AlgebraTag, n: usize) -> Result<BlockReport, SeminormalError> {
    let alg = regular_algebra(tag, n)?;
    let mut report = decompose_regular(&alg)?;
    let dim = alg.dim();
    let taus: Vec<SparseMatrix> = (1..n).map(|i| alg.generator(&format!("tau_{i}")).expect("built above").clone()).collect();
    let pi = jm_matrices(&taus, dim);
    let squares: Vec<SparseMatrix> = pi.iter().map(|p| p.mul(p)).collect();
    let casimir = squares.iter().fold(SparseMatrix::zeros(dim, dim), |acc, s| acc.add(s));
    let shapes = strict_partitions(n);
    let candidates: BTreeSet<Vec<u64>> =
        shapes.iter().flat_map(|s| standard_tableaux(s).into_iter().map(|t| spectrum_vector(&t).a)).collect();
    let values: Vec<BTreeSet<u64>> = (0..n).map(|k| candidates.iter().map(|a| a[k]).collect()).collect();
    for block in &mut report.blocks {
        let w = block.central_idempotent.mul_vec(&SparseVec::unit(0));
        let cw = casimir.mul_vec(&w);
        let (j, wj) = w.leading().cloned().ok_or_else(|| SeminormalError::Spectrum("idempotent kills the unit".into()))?;
        let lambda = cw.get(j).cloned().unwrap_or_default().checked_div(&wj).map_err(|_| SeminormalError::Spectrum("zero pivot".into()))?;
        if cw != w.scale(&lambda) {
            return Err(SeminormalError::Spectrum("sum of pi_k^2 is not a scalar on a block".into()));
        }
        let lam = nonnegative_integer(&lambda).ok_or_else(|| SeminormalError::Spectrum(format!("Casimir eigenvalue {lambda}")))?;
        let shape: Vec<&StrictPartition> = shapes.iter().filter(|s| content_sum(s) == lam).collect();
        if let [s] = shape.as_slice() {
            block.label = Some(s.to_string());
        }
        let mut found = Vec::new();
        let mut total = SparseVec::new();
        for a in &candidates {
            let mut v = w.clone();
            for k in 0..n {
                for &mu in values[k].iter().filter(|&&mu| mu != a[k]) {
                    let inv = int(a[k] as i64 - mu as i64).inverse().expect("distinct");
                    v = squares[k].mul_vec(&v).sub(&v.scale(&int(mu as i64))).scale(&inv);
                }
            }
            if v.is_zero() {
                continue;
            }
            for k in 0..n {
                if squares[k].mul_vec(&v) != v.scale(&int(a[k] as i64)) {
                    return Err(SeminormalError::Spectrum(format!("pi_{}^2 has an eigenvalue outside the tableau values", k + 1)));
                }
            }
            total = total.add(&v);
            found.push(a.clone());
        }
        if total != w {
            return Err(SeminormalError::Spectrum("joint eigenvectors of tableau spectra do not exhaust a block".into()));
        }
        block.spectrum = Some(found);
    }
    report.blocks.sort_by(|a, b| (a.dimension, &a.label).cmp(&(b.dimension, &b.label)));
    Ok(report)
}

impl BranchComponent {
    pub fn describe(&self) -> String {
        format!("{} x{} [{}]", self.partition, self.multiplicity, self.kind)
    }
}
