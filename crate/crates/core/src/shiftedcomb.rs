//! Strict partitions, shifted standard tableaux and their content vectors,
//! and the graded branching graph of the spin symmetric group chain.
//!
//! The shifted diagram of a strict partition puts row `r` (0-based) in
//! columns `r..r + alpha_r`. The content of a cell is `column - row`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gradedstruct::BlockType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("partition parts must be strictly decreasing positive integers, got {0:?}")]
    NotStrict(Vec<usize>),
    #[error("cannot parse partition {0:?}: expected comma-separated integers such as \"3,1\"")]
    Parse(String),
    #[error("tableau does not fill the shifted diagram of {0} with a standard filling")]
    InvalidTableau(String),
    #[error("rank {n} exceeds the limit {limit} for this operation")]
    SizeLimit { n: usize, limit: usize },
    #[error("branching graph invariant violated: {0}")]
    Invariant(String),
    #[error("representation computation failed: {0}")]
    Rep(String),
}

/// A partition with strictly decreasing parts. The empty partition is allowed
/// as the level-zero vertex of a branching graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct StrictPartition {
    parts: Vec<usize>,
}

impl StrictPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self, CombError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] > w[1]);
        if !ok {
            return Err(CombError::NotStrict(parts));
        }
        Ok(StrictPartition { parts })
    }

    pub fn empty() -> Self {
        StrictPartition { parts: Vec::new() }
    }

    /// Parse `"3,1"`.
    pub fn parse(s: &str) -> Result<Self, CombError> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| CombError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `M` when `n - length` is even, `Q` otherwise. This is the observed
    /// rule, checked against the classification of actual blocks in tests.
    pub fn parity_type(&self) -> VertexType {
        if (self.size() - self.len()) % 2 == 0 {
            VertexType::M
        } else {
            VertexType::Q
        }
    }

    /// Strict partitions obtained by removing one cell.
    pub fn predecessors(&self) -> Vec<StrictPartition> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            let mut p = self.parts.clone();
            p[i] -= 1;
            if p[i] == 0 {
                p.remove(i);
            }
            if let Ok(sp) = StrictPartition::new(p) {
                out.push(sp);
            }
        }
        out
    }

    /// Strict partitions obtained by adding one cell.
    pub fn successors(&self) -> Vec<StrictPartition> {
        let mut out = Vec::new();
        for i in 0..=self.parts.len() {
            let mut p = self.parts.clone();
            if i == p.len() {
                p.push(1);
            } else {
                p[i] += 1;
            }
            if let Ok(sp) = StrictPartition::new(p) {
                out.push(sp);
            }
        }
        out
    }
}

impl TryFrom<Vec<usize>> for StrictPartition {
    type Error = CombError;
    fn try_from(v: Vec<usize>) -> Result<Self, CombError> {
        Self::new(v)
    }
}

impl From<StrictPartition> for Vec<usize> {
    fn from(p: StrictPartition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n` as weakly decreasing part lists, in reverse
/// lexicographic order (largest first part first).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` with every part odd.
pub fn odd_partitions(n: usize) -> Vec<Vec<usize>> {
    partitions(n).into_iter().filter(|p| p.iter().all(|x| x % 2 == 1)).collect()
}

/// Strict partitions of `n`, largest first part first.
pub fn strict_partitions(n: usize) -> Vec<StrictPartition> {
    partitions(n)
        .into_iter()
        .filter(|p| p.windows(2).all(|w| w[0] > w[1]))
        .map(|parts| StrictPartition { parts })
        .collect()
}

/// A standard filling of a shifted diagram, stored row by row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShiftedTableau {
    pub shape: StrictPartition,
    pub rows: Vec<Vec<usize>>,
}

impl ShiftedTableau {
    pub fn new(shape: StrictPartition, rows: Vec<Vec<usize>>) -> Result<Self, CombError> {
        let t = ShiftedTableau { shape, rows };
        if !t.is_standard() {
            return Err(CombError::InvalidTableau(t.shape.to_string()));
        }
        Ok(t)
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    fn is_standard(&self) -> bool {
        let n = self.shape.size();
        if self.rows.len() != self.shape.len() || self.rows.iter().zip(self.shape.parts()).any(|(r, &p)| r.len() != p) {
            return false;
        }
        let mut seen = vec![false; n + 1];
        for r in &self.rows {
            for &x in r {
                if x == 0 || x > n || seen[x] {
                    return false;
                }
                seen[x] = true;
            }
        }
        for (r, row) in self.rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            if r > 0 {
                // Cell (r, c) sits below (r-1, c), which is entry c - (r-1) of the row above.
                for (k, &x) in row.iter().enumerate() {
                    let above = self.rows[r - 1][k + 1];
                    if above >= x {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `(row, column)` of every entry, indexed by entry - 1.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0); self.size()];
        for (r, row) in self.rows.iter().enumerate() {
            for (k, &x) in row.iter().enumerate() {
                out[x - 1] = (r, r + k);
            }
        }
        out
    }

    /// Shifted contents `column - row` of the cells holding `1..n`.
    pub fn contents(&self) -> Vec<usize> {
        self.cells().into_iter().map(|(r, c)| c - r).collect()
    }

    /// Exchange the entries `i` and `i + 1` if the result is standard.
    pub fn swap(&self, i: usize) -> Option<ShiftedTableau> {
        if i == 0 || i >= self.size() {
            return None;
        }
        let mut rows = self.rows.clone();
        for row in rows.iter_mut() {
            for x in row.iter_mut() {
                if *x == i {
                    *x = i + 1;
                } else if *x == i + 1 {
                    *x = i;
                }
            }
        }
        let t = ShiftedTableau { shape: self.shape.clone(), rows };
        t.is_standard().then_some(t)
    }

    /// The row-reading tableau: `1..n` placed along the first row, then the
    /// second, and so on.
    pub fn row_reading(shape: &StrictPartition) -> ShiftedTableau {
        let mut next = 1;
        let rows = shape
            .parts()
            .iter()
            .map(|&p| {
                let r: Vec<usize> = (next..next + p).collect();
                next += p;
                r
            })
            .collect();
        ShiftedTableau { shape: shape.clone(), rows }
    }
}

impl fmt::Display for ShiftedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "{}", rows.join(" / "))
    }
}

/// All shifted standard tableaux of shape `alpha`. The row-reading tableau
/// comes first; the order is that of a depth-first search placing `1..n`
/// into the lowest-index row available.
pub fn standard_tableaux(alpha: &StrictPartition) -> Vec<ShiftedTableau> {
    fn go(alpha: &[usize], rows: &mut Vec<Vec<usize>>, k: usize, n: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if k > n {
            out.push(rows.clone());
            return;
        }
        for r in 0..alpha.len() {
            let len = rows[r].len();
            if len == alpha[r] {
                continue;
            }
            // The cell (r, r + len) needs (r - 1, r + len) filled, which is
            // entry number len + 1 of the row above.
            if r > 0 && rows[r - 1].len() < len + 2 {
                continue;
            }
            rows[r].push(k);
            go(alpha, rows, k + 1, n, out);
            rows[r].pop();
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); alpha.len()];
    go(alpha.parts(), &mut rows, 1, alpha.size(), &mut out);
    out.into_iter().map(|rows| ShiftedTableau { shape: alpha.clone(), rows }).collect()
}

/// The `b`-vector of shifted contents and `a_i = b_i (b_i + 1) / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpectrumVector {
    pub b: Vec<usize>,
    pub a: Vec<u64>,
}

impl SpectrumVector {
    pub fn from_b(b: Vec<usize>) -> Self {
        let a = b.iter().map(|&x| triangular(x)).collect();
        SpectrumVector { b, a }
    }
}

pub fn triangular(b: usize) -> u64 {
    (b as u64) * (b as u64 + 1) / 2
}

/// Inverse of [`triangular`] on its image.
pub fn triangular_root(a: u64) -> Option<usize> {
    let b = (((8 * a + 1) as f64).sqrt() as u64).saturating_sub(1) / 2;
    (b.saturating_sub(1)..=b + 1).find(|&x| triangular(x as usize) == a).map(|x| x as usize)
}

pub fn spectrum_vector(t: &ShiftedTableau) -> SpectrumVector {
    SpectrumVector::from_b(t.contents())
}

/// Whether the pair `(a_i, a_{i+1})` is fused: `a_i + a_{i+1} = (a_i - a_{i+1})^2`.
pub fn is_fused(a: u64, b: u64) -> bool {
    let d = a as i128 - b as i128;
    (a + b) as i128 == d * d
}

/// Positions `i` for which exchanging `i` and `i + 1` gives a standard tableau.
pub fn admissible_transpositions(t: &ShiftedTableau) -> Vec<usize> {
    (1..t.size()).filter(|&i| t.swap(i).is_some()).collect()
}

/// Conditions on content vectors. Condition 3 forbids a consecutive
/// pattern `(d, d+1, d)`; the report lists the vectors breaking it.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumConditionReport {
    pub n: usize,
    pub vectors: usize,
    pub condition1: bool,
    pub condition2: bool,
    pub condition4: bool,
    pub condition3_exceptions: Vec<Vec<usize>>,
    pub injective: bool,
    pub admissible_matches_fusion: bool,
    pub orbits_connected: bool,
}

pub fn spectrum_conditions(n: usize) -> SpectrumConditionReport {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut count = 0;
    let mut injective = true;
    let mut admissible_ok = true;
    let mut connected = true;
    for alpha in strict_partitions(n) {
        let tabs = standard_tableaux(&alpha);
        for t in &tabs {
            count += 1;
            injective &= all.insert(t.contents());
            let sv = spectrum_vector(t);
            for i in 1..n {
                let adm = t.swap(i).is_some();
                admissible_ok &= adm != is_fused(sv.a[i - 1], sv.a[i]);
            }
        }
        connected &= admissible_orbit(&tabs[0]).len() == tabs.len();
    }
    let c1 = all.iter().all(|b| b.first().is_none_or(|&x| x == 0));
    let c2 = all.iter().all(|b| b.windows(2).all(|w| w[0] != w[1]));
    let c4 = all.iter().all(|b| {
        (0..b.len().saturating_sub(1)).all(|i| {
            if b[i + 1] + 1 == b[i] || b[i] + 1 == b[i + 1] {
                return true;
            }
            let mut s = b.clone();
            s.swap(i, i + 1);
            all.contains(&s)
        })
    });
    let exceptions = all
        .iter()
        .filter(|b| b.windows(3).any(|w| w[0] == w[2] && w[1] == w[0] + 1))
        .cloned()
        .collect();
    SpectrumConditionReport {
        n,
        vectors: count,
        condition1: c1,
        condition2: c2,
        condition4: c4,
        condition3_exceptions: exceptions,
        injective,
        admissible_matches_fusion: admissible_ok,
        orbits_connected: connected,
    }
}

/// All tableaux reachable from `t` by admissible transpositions.
pub fn admissible_orbit(t: &ShiftedTableau) -> BTreeSet<ShiftedTableau> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![t.clone()];
    while let Some(x) = stack.pop() {
        if !seen.insert(x.clone()) {
            continue;
        }
        for i in admissible_transpositions(&x) {
            stack.push(x.swap(i).expect("admissible"));
        }
    }
    seen
}

#[derive(Debug, Clone, Serialize)]
pub struct OddPartitionCount {
    pub n: usize,
    pub strict_count: usize,
    pub odd_count: usize,
    pub supercenter_dim: Option<usize>,
    pub all_equal: bool,
}

pub fn odd_partition_count_check(n: usize) -> Result<OddPartitionCount, CombError> {
    if n > 7 {
        return Err(CombError::SizeLimit { n, limit: 7 });
    }
    let strict_count = strict_partitions(n).len();
    let odd_count = odd_partitions(n).len();
    let supercenter_dim = if (1..=crate::spinalg::MAX_CENTRALIZER_RANK).contains(&n) {
        let sc = crate::spinalg::supercentralizer(n, n).map_err(|e| CombError::Rep(e.to_string()))?;
        let basis = crate::spinalg::supercenter_basis(n).map_err(|e| CombError::Rep(e.to_string()))?;
        let d = crate::spinalg::span_dim(&sc);
        let same = crate::spinalg::same_span(&sc, &basis) && crate::spinalg::span_dim(&basis) == basis.len();
        Some(if same { d } else { usize::MAX })
    } else {
        None
    };
    let all_equal = strict_count == odd_count && supercenter_dim.is_none_or(|d| d == odd_count);
    Ok(OddPartitionCount { n, strict_count, odd_count, supercenter_dim, all_equal })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexType {
    M,
    Q,
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexType::M => "M",
            VertexType::Q => "Q",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphSource {
    Combinatorial,
    FromReps,
}

/// One simple module per vertex, up to parity change. An `M` vertex stands
/// for an antipodal pair `(alpha, +)`, `(alpha, -)` swapped by the
/// involution; a `Q` vertex is fixed by it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVertex {
    pub partition: StrictPartition,
    #[serde(rename = "type")]
    pub kind: VertexType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub level: usize,
    pub from: usize,
    pub to: usize,
    pub multiplicity: usize,
}

/// Leveled graph of the chain `A_0 < A_1 < ... < A_n`. Level 0 is the empty
/// partition of type `M`, whose two copies are the sources.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingGraph {
    pub n: usize,
    pub source: GraphSource,
    pub levels: Vec<Vec<GraphVertex>>,
    /// Edges from level `level - 1` to level `level`, by position in the levels.
    pub edges: Vec<GraphEdge>,
}

/// A vertex of the doubled graph: position in its level and the copy sign
/// (`0` for `Q` vertices, `+1`/`-1` for the two copies of an `M` vertex).
pub type ExpandedVertex = (usize, usize, i8);

impl BranchingGraph {
    /// Vertices are strict partitions, edges remove one cell, every
    /// multiplicity is 1 and types follow [`StrictPartition::parity_type`].
    pub fn combinatorial(n: usize) -> Self {
        let mut levels = vec![vec![GraphVertex { partition: StrictPartition::empty(), kind: VertexType::M }]];
        for k in 1..=n {
            levels.push(
                strict_partitions(k)
                    .into_iter()
                    .map(|p| GraphVertex { kind: p.parity_type(), partition: p })
                    .collect(),
            );
        }
        let mut edges = Vec::new();
        for k in 1..=n {
            for (to, v) in levels[k].iter().enumerate() {
                for pred in v.partition.predecessors() {
                    let from = levels[k - 1].iter().position(|u| u.partition == pred).expect("predecessor is strict");
                    edges.push(GraphEdge { level: k, from, to, multiplicity: 1 });
                }
            }
        }
        let mut g = BranchingGraph { n, source: GraphSource::Combinatorial, levels, edges };
        g.sort_edges();
        g
    }

    fn sort_edges(&mut self) {
        self.edges.sort_by_key(|e| (e.level, e.from, e.to));
    }

    pub fn vertex_count(&self) -> usize {
        self.levels.iter().skip(1).map(Vec::len).sum()
    }

    /// Edge supports as `(level, from partition, to partition)`.
    pub fn edge_support(&self) -> BTreeSet<(usize, StrictPartition, StrictPartition)> {
        self.edges
            .iter()
            .filter(|e| e.multiplicity > 0)
            .map(|e| {
                (e.level, self.levels[e.level - 1][e.from].partition.clone(), self.levels[e.level][e.to].partition.clone())
            })
            .collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<(usize, StrictPartition, VertexType)> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(k, l)| l.iter().map(move |v| (k, v.partition.clone(), v.kind)))
            .collect()
    }

    /// The doubled vertex set of one level.
    pub fn expanded_level(&self, level: usize) -> Vec<ExpandedVertex> {
        let mut out = Vec::new();
        for (i, v) in self.levels[level].iter().enumerate() {
            match v.kind {
                VertexType::M => {
                    out.push((level, i, 1));
                    out.push((level, i, -1));
                }
                VertexType::Q => out.push((level, i, 0)),
            }
        }
        out
    }

    /// The involution: swaps the copies of every `M` vertex.
    pub fn omega(v: ExpandedVertex) -> ExpandedVertex {
        (v.0, v.1, -v.2)
    }

    /// Edges of the doubled graph with their multiplicities. A single
    /// edge between two `M` vertices joins equal copies; an edge touching
    /// a `Q` vertex joins it to both copies of the other end.
    pub fn expanded_edges(&self) -> Vec<(ExpandedVertex, ExpandedVertex, usize)> {
        let mut out = Vec::new();
        for e in &self.edges {
            let a = &self.levels[e.level - 1][e.from];
            let b = &self.levels[e.level][e.to];
            let (la, lb) = (e.level - 1, e.level);
            match (a.kind, b.kind) {
                (VertexType::M, VertexType::M) => {
                    out.push(((la, e.from, 1), (lb, e.to, 1), e.multiplicity));
                    out.push(((la, e.from, -1), (lb, e.to, -1), e.multiplicity));
                }
                (VertexType::M, VertexType::Q) => {
                    out.push(((la, e.from, 1), (lb, e.to, 0), e.multiplicity));
                    out.push(((la, e.from, -1), (lb, e.to, 0), e.multiplicity));
                }
                (VertexType::Q, VertexType::M) => {
                    out.push(((la, e.from, 0), (lb, e.to, 1), e.multiplicity));
                    out.push(((la, e.from, 0), (lb, e.to, -1), e.multiplicity));
                }
                (VertexType::Q, VertexType::Q) => out.push(((la, e.from, 0), (lb, e.to, 0), e.multiplicity)),
            }
        }
        out
    }

    /// Check the structural invariants: the level-0 convention, successors
    /// and predecessors, and that the involution maps edges to edges.
    pub fn validate(&self) -> Result<(), CombError> {
        if self.levels.first().is_none_or(|l| l.len() != 1 || l[0].kind != VertexType::M) {
            return Err(CombError::Invariant("level 0 must be a single M vertex (two sources)".into()));
        }
        let edges = self.expanded_edges();
        let set: BTreeSet<(ExpandedVertex, ExpandedVertex)> = edges.iter().map(|e| (e.0, e.1)).collect();
        for (a, b, _) in &edges {
            if !set.contains(&(Self::omega(*a), Self::omega(*b))) {
                return Err(CombError::Invariant(format!("involution does not preserve edge {a:?} -> {b:?}")));
            }
        }
        for k in 0..=self.n {
            for v in self.expanded_level(k) {
                if k < self.n && !edges.iter().any(|e| e.0 == v && e.2 > 0) {
                    return Err(CombError::Invariant(format!("vertex {v:?} has no successor")));
                }
                if k > 0 && !edges.iter().any(|e| e.1 == v && e.2 > 0) {
                    return Err(CombError::Invariant(format!("vertex {v:?} has no predecessor")));
                }
            }
        }
        Ok(())
    }

    /// Path counts from the two sources to each doubled vertex of `level`.
    pub fn path_counts(&self, level: usize) -> BTreeMap<ExpandedVertex, (u64, u64)> {
        let mut counts: BTreeMap<ExpandedVertex, (u64, u64)> = BTreeMap::new();
        counts.insert((0, 0, 1), (1, 0));
        counts.insert((0, 0, -1), (0, 1));
        let edges = self.expanded_edges();
        for k in 1..=level {
            for (a, b, m) in edges.iter().filter(|e| e.1 .0 == k) {
                let (x, y) = counts.get(a).copied().unwrap_or((0, 0));
                let e = counts.entry(*b).or_insert((0, 0));
                e.0 += x * *m as u64;
                e.1 += y * *m as u64;
            }
        }
        counts.retain(|v, _| v.0 == level);
        counts
    }
}

/// One block of the algebra assembled from a branching graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphBlock {
    pub partition: StrictPartition,
    pub block: BlockType,
    pub paths_from_plus: u64,
    pub paths_from_minus: u64,
}

/// The semisimple algebra whose blocks are indexed by involution orbits at
/// the top level, sized by path counts from the two sources.
pub fn algebra_from_graph(g: &BranchingGraph) -> Result<Vec<GraphBlock>, CombError> {
    g.validate()?;
    let counts = g.path_counts(g.n);
    let mut out = Vec::new();
    for (i, v) in g.levels[g.n].iter().enumerate() {
        let block = match v.kind {
            VertexType::M => {
                let (n_t, m_t) = counts[&(g.n, i, 1)];
                let (r, s) = (n_t.max(m_t), n_t.min(m_t));
                (BlockType::M { r: r as usize, s: s as usize }, n_t, m_t)
            }
            VertexType::Q => {
                let (n_t, m_t) = counts[&(g.n, i, 0)];
                if n_t != m_t {
                    return Err(CombError::Invariant(format!("fixed vertex {} has unequal path counts", v.partition)));
                }
                (BlockType::Q { r: n_t as usize }, n_t, m_t)
            }
        };
        out.push(GraphBlock { partition: v.partition.clone(), block: block.0, paths_from_plus: block.1, paths_from_minus: block.2 });
    }
    Ok(out)
}

/// Maximal paths of the doubled graph grouped by top vertex and by their
/// vertex sequence with the two copies of each `M` vertex identified.
#[derive(Debug, Clone, Serialize)]
pub struct PathClasses {
    pub partition: StrictPartition,
    pub copy: i8,
    pub paths: usize,
    pub classes: Vec<Vec<StrictPartition>>,
}

pub fn path_equivalence_classes(g: &BranchingGraph) -> Vec<PathClasses> {
    let edges = g.expanded_edges();
    let mut paths: Vec<Vec<ExpandedVertex>> = vec![vec![(0, 0, 1)], vec![(0, 0, -1)]];
    for k in 1..=g.n {
        let mut next = Vec::new();
        for p in &paths {
            let last = *p.last().expect("nonempty");
            for (a, b, m) in edges.iter().filter(|e| e.1 .0 == k) {
                if *a == last {
                    for _ in 0..*m {
                        let mut q = p.clone();
                        q.push(*b);
                        next.push(q);
                    }
                }
            }
        }
        paths = next;
    }
    let mut grouped: BTreeMap<ExpandedVertex, (usize, BTreeSet<Vec<StrictPartition>>)> = BTreeMap::new();
    for p in &paths {
        let top = *p.last().expect("nonempty");
        let labels: Vec<StrictPartition> = p.iter().map(|v| g.levels[v.0][v.1].partition.clone()).collect();
        let e = grouped.entry(top).or_default();
        e.0 += 1;
        e.1.insert(labels);
    }
    grouped
        .into_iter()
        .map(|(v, (paths, classes))| PathClasses {
            partition: g.levels[v.0][v.1].partition.clone(),
            copy: v.2,
            paths,
            classes: classes.into_iter().collect(),
        })
        .collect()
}

impl BranchingGraph {
    /// Graphviz rendering with one node per vertex, labeled `alpha [M|Q]`.
    /// With `doubled`, `M` vertices are drawn as two copies joined by a
    /// dashed involution edge.
    pub fn to_dot(&self, doubled: bool) -> String {
        let mut s = String::from("digraph branching {\n  rankdir=TB;\n");
        let name = |v: &ExpandedVertex| {
            let sfx = match v.2 {
                1 => "p",
                -1 => "m",
                _ => "",
            };
            format!("v{}_{}{}", v.0, v.1, sfx)
        };
        let first = if doubled { 0 } else { 1 };
        for k in first..=self.n {
            s.push_str(&format!("  subgraph level{k} {{ rank=same;"));
            if doubled {
                for v in self.expanded_level(k) {
                    let vert = &self.levels[k][v.1];
                    let sign = match v.2 {
                        1 => "+",
                        -1 => "-",
                        _ => "",
                    };
                    s.push_str(&format!(" {} [label=\"{}{} [{}]\"];", name(&v), vert.partition, sign, vert.kind));
                }
            } else {
                for (i, v) in self.levels[k].iter().enumerate() {
                    s.push_str(&format!(" {} [label=\"{} [{}]\"];", name(&(k, i, 0)), v.partition, v.kind));
                }
            }
            s.push_str(" }\n");
        }
        if doubled {
            for (a, b, m) in self.expanded_edges() {
                s.push_str(&format!("  {} -> {}{};\n", name(&a), name(&b), mult_attr(m)));
            }
            for k in 0..=self.n {
                for (i, v) in self.levels[k].iter().enumerate() {
                    if v.kind == VertexType::M {
                        s.push_str(&format!(
                            "  {} -> {} [style=dashed, dir=both, constraint=false];\n",
                            name(&(k, i, 1)),
                            name(&(k, i, -1))
                        ));
                    }
                }
            }
        } else {
            for e in self.edges.iter().filter(|e| e.level >= 2) {
                s.push_str(&format!(
                    "  {} -> {}{};\n",
                    name(&(e.level - 1, e.from, 0)),
                    name(&(e.level, e.to, 0)),
                    mult_attr(e.multiplicity)
                ));
            }
        }
        s.push_str("}\n");
        s
    }
}

fn mult_attr(m: usize) -> String {
    if m == 1 {
        String::new()
    } else {
        format!(" [label=\"{m}\"]")
    }
}

/// The graded Schur graph of level `n`, either from the combinatorial rule
/// or from restrictions of explicitly built representations.
pub fn schur_branching_graph(n: usize, source: GraphSource) -> Result<BranchingGraph, CombError> {
    match source {
        GraphSource::Combinatorial => Ok(BranchingGraph::combinatorial(n)),
        GraphSource::FromReps => crate::seminormal::branching_graph_from_reps(n).map_err(|e| match e {
            crate::seminormal::SeminormalError::SizeLimit { n, limit } => CombError::SizeLimit { n, limit },
            other => CombError::Rep(other.to_string()),
        }),
    }
}
