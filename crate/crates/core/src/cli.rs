//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns the process exit code: 0 on success, 1 when a
//! verification fails, 2 on invalid input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::checks::{check_all, MAX_CHECK_RANK};
use crate::seminormal::{
    build_rep_clifford_tensor, build_rep_plain, regular_decompose, spectrum_of, verify_relations, AlgebraTag,
    GradedRep, SeminormalError,
};
use crate::shiftedcomb::{
    odd_partition_count_check, schur_branching_graph, spectrum_vector, standard_tableaux, strict_partitions,
    CombError, GraphSource, StrictPartition,
};
use crate::spinalg::{gz_algebras, supercenter_basis, SpinError};
use crate::SCHEMA;

/// Largest `n` accepted by `strict-partitions`.
pub const MAX_LIST_RANK: usize = 60;

#[derive(Debug, Parser)]
#[command(name = "superspin", version, about = "Spin representations of symmetric groups in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalFlags,
}

#[derive(Debug, Args)]
pub struct GlobalFlags {
    /// Emit JSON instead of text where both exist.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Refuse ranks above this bound (for check-all: the rank cap, default 5).
    #[arg(long, global = true, value_name = "N")]
    pub max_n: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the strict partitions of N.
    StrictPartitions { n: usize },
    /// List the shifted standard tableaux of a strict partition such as 3,1.
    Tableaux { partition: String },
    /// Spectrum vectors (b, a) of every tableau of a shape.
    Spectrum {
        partition: String,
        /// Also read the spectrum off the seminormal build and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// The branching graph up to level N.
    BranchingGraph {
        n: usize,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
        /// In DOT, draw both copies of every M vertex.
        #[arg(long)]
        doubled: bool,
        /// Compute the graph by restricting the built representations.
        #[arg(long)]
        oracle: bool,
    },
    /// Build the seminormal representation of a shape.
    BuildRep {
        partition: String,
        /// Build over the Clifford tensor algebra.
        #[arg(long)]
        tensor: bool,
    },
    /// Re-check the relations of a representation written by build-rep.
    Verify { file: PathBuf },
    /// Basis of the supercenter of A_N.
    Supercenter { n: usize },
    /// Gelfand-Tsetlin algebras of A_N and their checks.
    Gz { n: usize },
    /// Decompose the regular representation by brute force.
    DecomposeRegular {
        n: usize,
        /// Decompose the Clifford tensor algebra instead.
        #[arg(long)]
        tensor: bool,
    },
    /// Run every acceptance check.
    CheckAll {
        /// Include wall-clock timings (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Failed(String),
}

impl From<CombError> for Failure {
    fn from(e: CombError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<SpinError> for Failure {
    fn from(e: SpinError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<SeminormalError> for Failure {
    fn from(e: SeminormalError) -> Self {
        match e {
            SeminormalError::Relation { .. } | SeminormalError::NoVariant | SeminormalError::Spectrum(_) => {
                Failure::Failed(e.to_string())
            }
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

/// What a command produced, and whether its checks passed.
struct Output {
    body: String,
    pass: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, pass: true }
    }
}

fn with_schema<T: Serialize>(value: &T) -> Value {
    let mut v = serde_json::to_value(value).expect("serializable");
    match v {
        Value::Object(ref mut map) => {
            map.insert("schema".into(), Value::String(SCHEMA.into()));
            v
        }
        other => json!({ "schema": SCHEMA, "value": other }),
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn parse_partition(s: &str) -> Result<StrictPartition, Failure> {
    let p = StrictPartition::parse(s)?;
    if p.is_empty() {
        return Err(Failure::Invalid("the partition must have at least one part".into()));
    }
    Ok(p)
}

fn check_cap(n: usize, global: &GlobalFlags) -> Result<(), Failure> {
    match global.max_n {
        Some(cap) if n > cap => Err(Failure::Invalid(format!("rank {n} exceeds --max-n {cap}"))),
        _ => Ok(()),
    }
}

fn execute(cmd: &Command, g: &GlobalFlags) -> Result<Output, Failure> {
    match cmd {
        Command::StrictPartitions { n } => {
            check_cap(*n, g)?;
            if *n > MAX_LIST_RANK {
                return Err(Failure::Invalid(format!("rank {n} exceeds the limit {MAX_LIST_RANK}")));
            }
            let parts = strict_partitions(*n);
            if g.json {
                let list: Vec<&[usize]> = parts.iter().map(|p| p.parts()).collect();
                return Ok(Output::ok(render(&json!({ "schema": SCHEMA, "n": n, "count": parts.len(), "partitions": list }))));
            }
            Ok(Output::ok(parts.iter().map(|p| format!("{}\n", join(p.parts()))).collect()))
        }
        Command::Tableaux { partition } => {
            let alpha = parse_partition(partition)?;
            check_cap(alpha.size(), g)?;
            let tabs = standard_tableaux(&alpha);
            if g.json {
                let rows: Vec<&Vec<Vec<usize>>> = tabs.iter().map(|t| &t.rows).collect();
                return Ok(Output::ok(render(
                    &json!({ "schema": SCHEMA, "shape": alpha.parts(), "count": tabs.len(), "tableaux": rows }),
                )));
            }
            Ok(Output::ok(tabs.iter().map(|t| format!("{t}\n")).collect()))
        }
        Command::Spectrum { partition, oracle } => {
            let alpha = parse_partition(partition)?;
            check_cap(alpha.size(), g)?;
            let vectors: Vec<_> = standard_tableaux(&alpha).iter().map(spectrum_vector).collect();
            let mut out = json!({ "schema": SCHEMA, "shape": alpha.parts(), "spectrum": vectors });
            let mut pass = true;
            if *oracle {
                let rep = build_rep_plain(&alpha)?;
                let mut found = spectrum_of(&rep)?;
                let mut expected: Vec<Vec<u64>> = vectors.iter().map(|v| v.a.clone()).collect();
                found.sort();
                expected.sort();
                pass = found == expected;
                out["oracle"] = json!({ "spectrum": found, "agrees": pass });
            }
            Ok(Output { body: render(&out), pass })
        }
        Command::BranchingGraph { n, dot, doubled, oracle } => {
            check_cap(*n, g)?;
            let source = if *oracle { GraphSource::FromReps } else { GraphSource::Combinatorial };
            let graph = schur_branching_graph(*n, source)?;
            if *dot {
                return Ok(Output::ok(graph.to_dot(*doubled)));
            }
            Ok(Output::ok(render(&with_schema(&graph))))
        }
        Command::BuildRep { partition, tensor } => {
            let alpha = parse_partition(partition)?;
            check_cap(alpha.size(), g)?;
            let rep = if *tensor { build_rep_clifford_tensor(&alpha)? } else { build_rep_plain(&alpha)? };
            Ok(Output::ok(render(&with_schema(&rep))))
        }
        Command::Verify { file } => verify_file(file, g),
        Command::Supercenter { n } => {
            check_cap(*n, g)?;
            let basis = supercenter_basis(*n)?;
            let counts = odd_partition_count_check(*n)?;
            let out = json!({
                "schema": SCHEMA,
                "n": n,
                "dim": basis.len(),
                "strict_partitions": counts.strict_count,
                "odd_partitions": counts.odd_count,
                "basis": basis,
            });
            if g.json {
                return Ok(Output::ok(render(&out)));
            }
            Ok(Output::ok(format!(
                "dim Z(A_{n}) = {}, strict partitions = {}, odd partitions = {}\n",
                basis.len(),
                counts.strict_count,
                counts.odd_count
            )))
        }
        Command::Gz { n } => {
            check_cap(*n, g)?;
            let report = gz_algebras(*n)?;
            let pass = report.all_pass();
            if g.json {
                return Ok(Output { body: render(&with_schema(&report)), pass });
            }
            let mut s = String::new();
            let _ = writeln!(s, "GZ(A_{n}): dim {}", report.gz_basis.len());
            let _ = writeln!(s, "SGZ = algebra of pi_k: {}", report.sgz_equals_jm_algebra);
            let _ = writeln!(s, "SZ = algebra of pi_k^2: {}", report.sz_equals_jm_squares_algebra);
            let _ = writeln!(s, "chain inclusions: {}", report.chain_inclusions);
            let _ = writeln!(s, "commutative: {}", report.gz_commutative);
            let _ = writeln!(s, "even centralizer dim {}, maximal: {}", report.even_centralizer_dim, report.maximality_flag);
            Ok(Output { body: s, pass })
        }
        Command::DecomposeRegular { n, tensor } => {
            check_cap(*n, g)?;
            let tag = if *tensor { AlgebraTag::CliffordTensor } else { AlgebraTag::Spin };
            let report = regular_decompose(tag, *n)?;
            let pass = report.dims_consistent();
            if g.json {
                let mut v = with_schema(&report);
                v["algebra"] = serde_json::to_value(tag).expect("serializable");
                v["n"] = json!(n);
                return Ok(Output { body: render(&v), pass });
            }
            let mut s = format!("regular representation of {tag}, n = {n}, dim {}\n", report.algebra_dim);
            for b in &report.blocks {
                let _ = writeln!(
                    s,
                    "{} {}  dim {}  spectrum {:?}",
                    b.label.as_deref().unwrap_or("?"),
                    b.block_type,
                    b.dimension,
                    b.spectrum.as_deref().unwrap_or(&[])
                );
            }
            Ok(Output { body: s, pass })
        }
        Command::CheckAll { timings } => {
            let max_n = g.max_n.unwrap_or(5);
            if max_n > MAX_CHECK_RANK {
                return Err(Failure::Invalid(format!("--max-n {max_n} exceeds the limit {MAX_CHECK_RANK}")));
            }
            let mut report = check_all(max_n);
            if !timings {
                report.criteria.iter_mut().for_each(|c| c.seconds = 0.0);
            }
            let pass = report.all_pass;
            if g.json {
                return Ok(Output { body: render(&serde_json::to_value(&report).expect("serializable")), pass });
            }
            Ok(Output { body: report.table(*timings), pass })
        }
    }
}

fn verify_file(path: &PathBuf, g: &GlobalFlags) -> Result<Output, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("{} is not JSON: {e}", path.display())))?;
    match value.get("schema") {
        None => {}
        Some(Value::String(s)) if s == SCHEMA => {}
        Some(other) => return Err(Failure::Invalid(format!("unsupported schema {other}"))),
    }
    let rep: GradedRep =
        serde_json::from_value(value).map_err(|e| Failure::Invalid(format!("not a representation file: {e}")))?;
    check_cap(rep.n, g)?;
    let report = verify_relations(&rep)?;
    let pass = report.all_pass;
    if g.json {
        let mut v = with_schema(&report);
        v["shape"] = json!(rep.shape.parts());
        v["algebra"] = serde_json::to_value(rep.algebra).expect("serializable");
        return Ok(Output { body: render(&v), pass });
    }
    let failed: Vec<_> = report.failures().collect();
    let mut s = format!(
        "{} {} on {}: {} relations checked, {} failed\n",
        rep.algebra,
        rep.shape,
        rep.dim,
        report.checks.len(),
        failed.len()
    );
    for f in failed {
        let _ = writeln!(s, "FAIL {} (defect {})", f.identity, f.defect_norm);
    }
    Ok(Output { body: s, pass })
}

fn join(parts: &[usize]) -> String {
    parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let output = match execute(&cli.command, &cli.global) {
        Ok(o) => o,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("verification failed: {msg}");
            return 1;
        }
    };
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &output.body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{}", output.body),
    }
    if output.pass {
        0
    } else {
        1
    }
}
