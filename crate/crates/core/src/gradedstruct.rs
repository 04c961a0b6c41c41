//! Concrete Z/2-graded matrix algebras: the algebra spanned by a set of
//! homogeneous generators acting on a graded space.
//!
//! Simple graded algebras come in two families. `M(r,s)` is the full matrix
//! algebra of a space with `r` even and `s` odd basis vectors, with even and
//! odd parts of dimensions `r^2 + s^2` and `2rs`. `Q(r)` consists of the
//! matrices `[[A, B], [B, A]]` on a space of dimension `(r, r)`, and both of
//! its parts have dimension `r^2`. The two families never share a pair of
//! part dimensions, which is how blocks are identified below.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Roots;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::SqrtNumber;
use crate::linalg::{kernel, Echelon, SparseMatrix, SparseVec, Subspace};
use crate::poly::Poly;

/// Largest module dimension for kernel solves over the full matrix space.
pub const MAX_KERNEL_DIM: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("generator {name} is not square of size {dim}")]
    Shape { name: String, dim: usize },
    #[error("generator {0} is not parity-homogeneous")]
    NonHomogeneous(String),
    #[error("parity vector entries must be 0 or 1")]
    BadParity,
    #[error("algebra is not semisimple: {0}")]
    NotSemisimple(String),
    #[error("could not split the center exactly: {0}")]
    Split(String),
    #[error("module dimension {dim} exceeds the limit {limit}")]
    SizeLimit { dim: usize, limit: usize },
    #[error("subspace is not spanned by homogeneous vectors")]
    InhomogeneousSubspace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: SparseMatrix,
}

impl NamedMatrix {
    pub fn new(name: impl Into<String>, matrix: SparseMatrix) -> Self {
        NamedMatrix { name: name.into(), matrix }
    }
}

/// Parity of a matrix relative to a basis parity vector; `None` when mixed.
/// The zero matrix counts as even.
pub fn matrix_parity(m: &SparseMatrix, parity: &[u8]) -> Option<u8> {
    let mut found: Option<u8> = None;
    for (r, c, _) in m.triplets() {
        let p = parity[r] ^ parity[c];
        match found {
            None => found = Some(p),
            Some(q) if q != p => return None,
            _ => {}
        }
    }
    Some(found.unwrap_or(0))
}

/// An algebra given by homogeneous generators on a graded space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedMatrixAlgebra {
    dim: usize,
    parity: Vec<u8>,
    generators: Vec<NamedMatrix>,
    #[serde(skip)]
    generator_parity: Vec<u8>,
}

#[derive(Deserialize)]
struct AlgebraRepr {
    dim: usize,
    parity: Vec<u8>,
    generators: Vec<NamedMatrix>,
}

impl<'de> Deserialize<'de> for GradedMatrixAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = AlgebraRepr::deserialize(deserializer)?;
        if r.dim != r.parity.len() {
            return Err(serde::de::Error::custom("dim does not match parity length"));
        }
        GradedMatrixAlgebra::new(r.parity, r.generators).map_err(serde::de::Error::custom)
    }
}

impl GradedMatrixAlgebra {
    pub fn new(parity: Vec<u8>, generators: Vec<NamedMatrix>) -> Result<Self, GradedError> {
        if parity.iter().any(|&p| p > 1) {
            return Err(GradedError::BadParity);
        }
        let dim = parity.len();
        let mut generator_parity = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.matrix.nrows() != dim || g.matrix.ncols() != dim {
                return Err(GradedError::Shape { name: g.name.clone(), dim });
            }
            let p = matrix_parity(&g.matrix, &parity).ok_or_else(|| GradedError::NonHomogeneous(g.name.clone()))?;
            generator_parity.push(p);
        }
        Ok(GradedMatrixAlgebra { dim, parity, generators, generator_parity })
    }

    pub fn from_pairs(parity: Vec<u8>, gens: Vec<(&str, SparseMatrix)>) -> Result<Self, GradedError> {
        Self::new(parity, gens.into_iter().map(|(n, m)| NamedMatrix::new(n, m)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn generators(&self) -> &[NamedMatrix] {
        &self.generators
    }

    pub fn generator_parities(&self) -> &[u8] {
        &self.generator_parity
    }

    pub fn generator(&self, name: &str) -> Option<&SparseMatrix> {
        self.generators.iter().find(|g| g.name == name).map(|g| &g.matrix)
    }

    /// Numbers of even and odd basis vectors.
    pub fn graded_dims(&self) -> (usize, usize) {
        let odd = self.parity.iter().filter(|&&p| p == 1).count();
        (self.dim - odd, odd)
    }

    /// The diagonal parity operator `J`.
    pub fn parity_operator(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.dim,
            self.dim,
            self.parity.iter().enumerate().map(|(i, &p)| (i, i, SqrtNumber::from_integer(if p == 0 { 1 } else { -1 }))),
        )
    }

    /// The parity automorphism `theta(m) = J m J`.
    pub fn theta(&self, m: &SparseMatrix) -> SparseMatrix {
        let j = self.parity_operator();
        j.mul(m).mul(&j)
    }

    pub fn matrix_parity(&self, m: &SparseMatrix) -> Option<u8> {
        matrix_parity(m, &self.parity)
    }

    /// The generators restricted to an invariant subspace spanned by
    /// homogeneous vectors.
    pub fn restrict(&self, sub: &Subspace) -> Result<Self, GradedError> {
        let mut parity = Vec::with_capacity(sub.dim());
        for v in &sub.basis {
            let mut ps = v.entries().iter().map(|(i, _)| self.parity[*i]);
            let p = ps.next().unwrap_or(0);
            if ps.any(|q| q != p) {
                return Err(GradedError::InhomogeneousSubspace);
            }
            parity.push(p);
        }
        let gens = self.generators.iter().map(|g| NamedMatrix::new(g.name.clone(), sub.restrict(&g.matrix))).collect();
        Self::new(parity, gens)
    }

    /// Basis of the unital algebra spanned by words in the generators,
    /// split by parity.
    pub fn span_closure(&self) -> AlgebraSpan {
        let mut ech = Echelon::new(self.dim * self.dim);
        let one = SparseMatrix::identity(self.dim);
        ech.insert(&one.vectorize());
        let mut all = vec![(0u8, one)];
        let mut frontier = 0;
        while frontier < all.len() {
            let (p, x) = all[frontier].clone();
            frontier += 1;
            for (g, &pg) in self.generators.iter().zip(&self.generator_parity) {
                let y = x.mul(&g.matrix);
                if ech.insert(&y.vectorize()).is_some() {
                    all.push((p ^ pg, y));
                }
            }
        }
        let mut span = AlgebraSpan { even: Vec::new(), odd: Vec::new() };
        for (p, m) in all {
            if p == 0 {
                span.even.push(m);
            } else {
                span.odd.push(m);
            }
        }
        span
    }

    /// Basis of the supercommutant, each element tagged with its parity.
    pub fn supercommutant(&self) -> Result<Vec<(u8, SparseMatrix)>, GradedError> {
        self.supercommutant_blocked(None)
    }

    /// Supercommutant with unknowns restricted to positions `(r, c)` whose
    /// block labels agree, for callers that know the answer is block diagonal.
    pub fn supercommutant_blocked(&self, blocks: Option<&[usize]>) -> Result<Vec<(u8, SparseMatrix)>, GradedError> {
        if self.dim > MAX_KERNEL_DIM {
            return Err(GradedError::SizeLimit { dim: self.dim, limit: MAX_KERNEL_DIM });
        }
        let n = self.dim;
        let transposes: Vec<SparseMatrix> = self.generators.iter().map(|g| g.matrix.transpose()).collect();
        let mut out = Vec::new();
        for p in 0..2u8 {
            let mut index = vec![usize::MAX; n * n];
            let mut positions = Vec::new();
            for r in 0..n {
                for c in 0..n {
                    let same_block = blocks.is_none_or(|b| b[r] == b[c]);
                    if (self.parity[r] ^ self.parity[c]) == p && same_block {
                        index[r * n + c] = positions.len();
                        positions.push((r, c));
                    }
                }
            }
            let mut rows: BTreeMap<usize, Vec<(usize, SqrtNumber)>> = BTreeMap::new();
            for (gi, (g, gt)) in self.generators.iter().zip(&transposes).enumerate() {
                let sign: i64 = if p * self.generator_parity[gi] == 1 { -1 } else { 1 };
                // (X G)[r, c] = sum_k X[r, k] G[k, c]; unknown X[r, k] feeds rows (r, c) for G[k, c] != 0.
                for (u, &(r, k)) in positions.iter().enumerate() {
                    for (c, x) in g.matrix.row(k).entries() {
                        rows.entry(gi * n * n + r * n + c).or_default().push((u, x.clone()));
                    }
                    // (G X)[r', k'] with X[r, k] at (r, k): G[r', r] X[r, k] feeds row (r', k).
                    for (rp, x) in gt.row(r).entries() {
                        rows.entry(gi * n * n + rp * n + k).or_default().push((u, x * &SqrtNumber::from_integer(-sign)));
                    }
                }
            }
            let rows: Vec<SparseVec> = rows.into_values().map(SparseVec::from_entries).collect();
            for v in kernel(&rows, positions.len()) {
                let m = SparseMatrix::from_triplets(
                    n,
                    n,
                    v.into_entries().into_iter().map(|(u, x)| (positions[u].0, positions[u].1, x)),
                );
                out.push((p, m));
            }
        }
        Ok(out)
    }
}

/// Homogeneous basis of the algebra spanned by the generators.
#[derive(Debug, Clone)]
pub struct AlgebraSpan {
    pub even: Vec<SparseMatrix>,
    pub odd: Vec<SparseMatrix>,
}

impl AlgebraSpan {
    pub fn dims(&self) -> (usize, usize) {
        (self.even.len(), self.odd.len())
    }

    pub fn dim(&self) -> usize {
        self.even.len() + self.odd.len()
    }

    pub fn all(&self) -> impl Iterator<Item = &SparseMatrix> {
        self.even.iter().chain(&self.odd)
    }
}

/// Isomorphism type of a simple graded algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum BlockType {
    M { r: usize, s: usize },
    Q { r: usize },
}

impl BlockType {
    /// `M(r,s)` with `r >= s`, since `M(r,s)` and `M(s,r)` are isomorphic.
    pub fn m(r: usize, s: usize) -> Self {
        BlockType::M { r: r.max(s), s: r.min(s) }
    }

    pub fn algebra_dim(&self) -> usize {
        match *self {
            BlockType::M { r, s } => (r + s) * (r + s),
            BlockType::Q { r } => 2 * r * r,
        }
    }

    /// Dimension of a graded simple module.
    pub fn module_dim(&self) -> usize {
        match *self {
            BlockType::M { r, s } => r + s,
            BlockType::Q { r } => 2 * r,
        }
    }

    /// Dimensions of the even and odd parts of the algebra.
    pub fn part_dims(&self) -> (usize, usize) {
        match *self {
            BlockType::M { r, s } => (r * r + s * s, 2 * r * s),
            BlockType::Q { r } => (r * r, r * r),
        }
    }

    /// Recover the type from the dimensions of the even and odd parts.
    pub fn from_part_dims(d0: usize, d1: usize) -> Option<Self> {
        let exact_sqrt = |x: usize| {
            let r = x.sqrt();
            (r * r == x).then_some(r)
        };
        if d0 == d1 {
            if let Some(r) = exact_sqrt(d0) {
                return (r > 0).then_some(BlockType::Q { r });
            }
        }
        let sum = exact_sqrt(d0 + d1)?;
        let diff = exact_sqrt(d0.checked_sub(d1)?)?;
        if (sum + diff) % 2 != 0 || sum == 0 {
            return None;
        }
        Some(BlockType::m((sum + diff) / 2, (sum - diff) / 2))
    }

    pub fn is_q(&self) -> bool {
        matches!(self, BlockType::Q { .. })
    }
}

impl fmt::Display for BlockType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockType::M { r, s } => write!(f, "M({r},{s})"),
            BlockType::Q { r } => write!(f, "Q({r})"),
        }
    }
}

/// Result of classifying a graded module by its supercommutant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum ModuleClass {
    M { r: usize, s: usize },
    Q { r: usize },
    Reducible { supercommutant_dim: usize },
}

impl fmt::Display for ModuleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleClass::M { r, s } => write!(f, "M({r},{s})"),
            ModuleClass::Q { r } => write!(f, "Q({r})"),
            ModuleClass::Reducible { supercommutant_dim } => write!(f, "reducible (supercommutant dim {supercommutant_dim})"),
        }
    }
}

/// A one-dimensional supercommutant means a simple module of type `M`
/// with the module's graded dimension; a two-dimensional one containing an
/// invertible odd element means type `Q`.
pub fn classify_module(a: &GradedMatrixAlgebra) -> Result<ModuleClass, GradedError> {
    let sc = a.supercommutant()?;
    let (r, s) = a.graded_dims();
    if sc.len() == 1 {
        return Ok(ModuleClass::M { r, s });
    }
    if sc.len() == 2 {
        if let Some((_, u)) = sc.iter().find(|(p, _)| *p == 1) {
            let sq = u.mul(u);
            if sq.as_scalar().is_some_and(|c| !c.is_zero()) && r == s {
                return Ok(ModuleClass::Q { r });
            }
        }
    }
    Ok(ModuleClass::Reducible { supercommutant_dim: sc.len() })
}

/// Type of the image algebra of a module whose image is simple, with the
/// number of simple constituents.
pub fn isotypic_type(a: &GradedMatrixAlgebra) -> Result<(BlockType, usize), GradedError> {
    let span = a.span_closure();
    let (d0, d1) = span.dims();
    let t = BlockType::from_part_dims(d0, d1)
        .ok_or_else(|| GradedError::NotSemisimple(format!("image algebra has part dimensions ({d0},{d1})")))?;
    if a.dim() % t.module_dim() != 0 {
        return Err(GradedError::NotSemisimple(format!("module dimension {} is not a multiple of {}", a.dim(), t.module_dim())));
    }
    Ok((t, a.dim() / t.module_dim()))
}

fn triplets_ser<S: serde::Serializer>(m: &SparseMatrix, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.nnz()))?;
    for (r, c, x) in m.triplets() {
        seq.serialize_element(&(r, c, x))?;
    }
    seq.end()
}

/// One simple block of a decomposed algebra.
#[derive(Debug, Clone, Serialize)]
pub struct Block {
    #[serde(rename = "type")]
    pub block_type: BlockType,
    /// Dimension of the block algebra.
    pub dimension: usize,
    /// Dimensions of the even and odd parts of the block algebra.
    pub part_dims: (usize, usize),
    /// Graded dimension of the image of the central idempotent.
    pub module_dims: (usize, usize),
    /// How many graded simple modules (of either parity) the image contains.
    pub multiplicity: usize,
    /// Central idempotent as `(row, col, value)` triplets.
    #[serde(serialize_with = "triplets_ser")]
    pub central_idempotent: SparseMatrix,
    pub label: Option<String>,
    pub spectrum: Option<Vec<Vec<u64>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockReport {
    pub algebra_dim: usize,
    pub part_dims: (usize, usize),
    pub blocks: Vec<Block>,
}

impl BlockReport {
    pub fn types(&self) -> Vec<BlockType> {
        self.blocks.iter().map(|b| b.block_type).collect()
    }

    pub fn dims_consistent(&self) -> bool {
        self.blocks.iter().map(|b| b.dimension).sum::<usize>() == self.algebra_dim
    }

    fn sort(&mut self) {
        self.blocks.sort_by(|a, b| (a.dimension, &a.label, a.block_type).cmp(&(b.dimension, &b.label, b.block_type)));
    }
}

/// Kernel of `c -> sum_k c_k f(B_k)` over the span of `basis`, returned as
/// the corresponding combinations of the basis matrices.
pub fn solve_in_span<F>(basis: &[SparseMatrix], f: F) -> Vec<SparseMatrix>
where
    F: Fn(&SparseMatrix) -> Vec<SparseMatrix> + Sync,
{
    use rayon::prelude::*;
    let Some(first) = basis.first() else { return Vec::new() };
    let (nr, nc) = (first.nrows(), first.ncols());
    let columns: Vec<Vec<SparseMatrix>> = basis.par_iter().map(&f).collect();
    let mut rows: BTreeMap<usize, Vec<(usize, SqrtNumber)>> = BTreeMap::new();
    for (k, images) in columns.into_iter().enumerate() {
        for (j, m) in images.into_iter().enumerate() {
            let off = j * nr * nc;
            for (i, x) in m.vectorize().into_entries() {
                rows.entry(off + i).or_default().push((k, x));
            }
        }
    }
    let rows: Vec<SparseVec> = rows.into_values().map(SparseVec::from_entries).collect();
    kernel(&rows, basis.len())
        .into_iter()
        .map(|v| {
            let terms: Vec<(SqrtNumber, &SparseMatrix)> = v.entries().iter().map(|(k, x)| (x.clone(), &basis[*k])).collect();
            SparseMatrix::linear_combination(nr, nc, &terms)
        })
        .collect()
}

/// Even elements of the algebra commuting with every generator.
pub fn even_center(a: &GradedMatrixAlgebra, span: &AlgebraSpan) -> Vec<SparseMatrix> {
    let gens: Vec<&SparseMatrix> = a.generators.iter().map(|g| &g.matrix).collect();
    solve_in_span(&span.even, |b| gens.iter().map(|g| b.mul(g).sub(&g.mul(b))).collect())
}

/// Elements of either parity commuting with every generator.
pub fn ungraded_center(a: &GradedMatrixAlgebra, span: &AlgebraSpan) -> Vec<SparseMatrix> {
    let gens: Vec<&SparseMatrix> = a.generators.iter().map(|g| &g.matrix).collect();
    let all: Vec<SparseMatrix> = span.all().cloned().collect();
    solve_in_span(&all, |b| gens.iter().map(|g| b.mul(g).sub(&g.mul(b))).collect())
}

/// Multiplication in a commutative algebra of matrices through the
/// coordinates at pivot entries of a reduced basis.
struct CenterAlgebra {
    n: usize,
    basis: Vec<SparseMatrix>,
    pivots: Vec<(usize, usize)>,
    table: Vec<Vec<SparseVec>>,
    unit: SparseVec,
}

impl CenterAlgebra {
    fn new(center: &[SparseMatrix]) -> Self {
        let n = center[0].nrows();
        let vecs: Vec<SparseVec> = center.iter().map(SparseMatrix::vectorize).collect();
        let sub = Subspace::from_spanning(n * n, &vecs);
        let basis: Vec<SparseMatrix> = sub.basis.iter().map(|v| SparseMatrix::from_vectorized(n, n, v)).collect();
        let pivots: Vec<(usize, usize)> = sub.coord_rows.iter().map(|&p| (p / n, p % n)).collect();
        let cols: Vec<SparseMatrix> = basis.iter().map(SparseMatrix::transpose).collect();
        let k = basis.len();
        let table = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        SparseVec::from_entries(pivots.iter().enumerate().map(|(c, &(r, col))| {
                            (c, basis[a].row(r).dot(cols[b].row(col)))
                        }))
                    })
                    .collect()
            })
            .collect();
        let unit = SparseVec::from_entries(
            pivots.iter().enumerate().filter(|(_, (r, c))| r == c).map(|(k, _)| (k, SqrtNumber::one())),
        );
        CenterAlgebra { n, basis, pivots, table, unit }
    }

    fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (a, xa) in x.entries() {
            for (b, yb) in y.entries() {
                acc = acc.add_scaled(&self.table[*a][*b], &(xa * yb));
            }
        }
        acc
    }

    fn dim(&self) -> usize {
        self.pivots.len()
    }

    fn matrix(&self, x: &SparseVec) -> SparseMatrix {
        let terms: Vec<(SqrtNumber, &SparseMatrix)> = x.entries().iter().map(|(k, c)| (c.clone(), &self.basis[*k])).collect();
        SparseMatrix::linear_combination(self.n, self.n, &terms)
    }

    /// Minimal polynomial of `x` inside the algebra with unit `e`.
    fn minimal_poly(&self, x: &SparseVec, e: &SparseVec) -> Poly {
        let mut ech = Echelon::tracking(self.dim());
        let mut pow = e.clone();
        ech.insert(&pow);
        loop {
            pow = self.mul(&pow, x);
            match ech.coordinates(&pow) {
                Some(c) => {
                    let deg = ech.rank();
                    let mut coeffs = vec![SqrtNumber::zero(); deg + 1];
                    for (i, v) in c.entries() {
                        coeffs[*i] = -v;
                    }
                    coeffs[deg] = SqrtNumber::one();
                    return Poly::new(coeffs);
                }
                None => {
                    ech.insert(&pow);
                }
            }
        }
    }

    /// Primitive idempotents by repeated eigenvalue splitting.
    fn primitive_idempotents(&self) -> Result<Vec<SparseVec>, GradedError> {
        let mut parts = vec![self.unit.clone()];
        for j in 0..self.dim() {
            if parts.len() == self.dim() {
                break;
            }
            let z = SparseVec::unit(j);
            let mut next = Vec::new();
            for e in parts {
                let x = self.mul(&z, &e);
                let poly = self.minimal_poly(&x, &e);
                let deg = poly.degree().unwrap_or(0);
                if deg <= 1 {
                    next.push(e);
                    continue;
                }
                let roots = poly.roots().ok_or_else(|| GradedError::Split(format!("minimal polynomial of degree {deg}")))?;
                let mut distinct: Vec<SqrtNumber> = Vec::new();
                for r in roots {
                    if !distinct.contains(&r) {
                        distinct.push(r);
                    }
                }
                if distinct.len() != deg {
                    return Err(GradedError::NotSemisimple("central element with a repeated eigenvalue".into()));
                }
                for (i, lam) in distinct.iter().enumerate() {
                    let mut p = e.clone();
                    for (k, mu) in distinct.iter().enumerate() {
                        if k == i {
                            continue;
                        }
                        let factor = x.sub(&e.scale(mu));
                        let denom = (lam - mu).inverse().expect("distinct roots");
                        p = self.mul(&p, &factor).scale(&denom);
                    }
                    next.push(p);
                }
            }
            parts = next;
        }
        if parts.len() != self.dim() {
            return Err(GradedError::Split(format!("found {} of {} idempotents", parts.len(), self.dim())));
        }
        Ok(parts)
    }
}

/// Central idempotents of the algebra generated by `a`, from its even center.
pub fn central_idempotents(a: &GradedMatrixAlgebra, span: &AlgebraSpan) -> Result<Vec<SparseMatrix>, GradedError> {
    let center = even_center(a, span);
    if center.is_empty() {
        return Err(GradedError::NotSemisimple("empty center".into()));
    }
    let alg = CenterAlgebra::new(&center);
    Ok(alg.primitive_idempotents()?.iter().map(|x| alg.matrix(x)).collect())
}

/// Graded dimension of the image of an idempotent, from its trace on each parity.
pub fn idempotent_rank(e: &SparseMatrix, parity: &[u8]) -> (usize, usize) {
    let mut t = [SqrtNumber::zero(), SqrtNumber::zero()];
    for (i, &p) in parity.iter().enumerate() {
        t[p as usize] += &e.get(i, i);
    }
    let conv = |x: &SqrtNumber| x.to_rational().and_then(|q| q.to_integer().to_usize()).unwrap_or(usize::MAX);
    (conv(&t[0]), conv(&t[1]))
}

/// Image of an idempotent as a subspace with a homogeneous basis.
pub fn idempotent_image(e: &SparseMatrix) -> Subspace {
    let cols = e.transpose();
    Subspace::from_spanning(e.nrows(), cols.rows())
}

/// Split the algebra into simple blocks via its even center, and classify
/// each block from the part dimensions of its restricted image.
pub fn decompose_semisimple(a: &GradedMatrixAlgebra) -> Result<BlockReport, GradedError> {
    let span = a.span_closure();
    let idempotents = central_idempotents(a, &span)?;
    let mut blocks = Vec::new();
    for e in idempotents {
        let sub = idempotent_image(&e);
        let restricted = a.restrict(&sub)?;
        let (d0, d1) = restricted.span_closure().dims();
        let t = BlockType::from_part_dims(d0, d1)
            .ok_or_else(|| GradedError::NotSemisimple(format!("block with part dimensions ({d0},{d1})")))?;
        if t.is_q() {
            let odd_center = odd_central_element(&restricted);
            if !odd_center {
                return Err(GradedError::NotSemisimple("Q-sized block without an odd central element".into()));
            }
        }
        let module_dims = idempotent_rank(&e, a.parity());
        blocks.push(Block {
            block_type: t,
            dimension: d0 + d1,
            part_dims: (d0, d1),
            multiplicity: (module_dims.0 + module_dims.1) / t.module_dim(),
            module_dims,
            central_idempotent: e,
            label: None,
            spectrum: None,
        });
    }
    let mut report = BlockReport { algebra_dim: span.dim(), part_dims: span.dims(), blocks };
    report.sort();
    Ok(report)
}

/// Decomposition of an algebra acting on itself by left multiplication. The
/// block algebra then coincides with the image of its idempotent, so block
/// dimensions are read off traces instead of restricted closures.
pub fn decompose_regular(a: &GradedMatrixAlgebra) -> Result<BlockReport, GradedError> {
    let span = a.span_closure();
    if span.dim() != a.dim() {
        return Err(GradedError::NotSemisimple(format!(
            "module of dimension {} is not regular for an algebra of dimension {}",
            a.dim(),
            span.dim()
        )));
    }
    let idempotents = central_idempotents(a, &span)?;
    let mut blocks = Vec::new();
    for e in idempotents {
        let (d0, d1) = idempotent_rank(&e, a.parity());
        let t = BlockType::from_part_dims(d0, d1)
            .ok_or_else(|| GradedError::NotSemisimple(format!("block with part dimensions ({d0},{d1})")))?;
        blocks.push(Block {
            block_type: t,
            dimension: d0 + d1,
            part_dims: (d0, d1),
            module_dims: (d0, d1),
            multiplicity: (d0 + d1) / t.module_dim(),
            central_idempotent: e,
            label: None,
            spectrum: None,
        });
    }
    let mut report = BlockReport { algebra_dim: span.dim(), part_dims: span.dims(), blocks };
    report.sort();
    Ok(report)
}

/// Whether the algebra has a nonzero odd element commuting with all generators.
fn odd_central_element(a: &GradedMatrixAlgebra) -> bool {
    let span = a.span_closure();
    let gens: Vec<&SparseMatrix> = a.generators.iter().map(|g| &g.matrix).collect();
    !solve_in_span(&span.odd, |b| gens.iter().map(|g| b.mul(g).sub(&g.mul(b))).collect()).is_empty()
}

/// Graded tensor product. Generators of the left factor act as `a (x) 1`;
/// a generator `b` of the right factor acts as `J^p(b) (x) b`.
pub fn graded_tensor(a: &GradedMatrixAlgebra, b: &GradedMatrixAlgebra) -> GradedMatrixAlgebra {
    let ia = SparseMatrix::identity(a.dim);
    let ib = SparseMatrix::identity(b.dim);
    let ja = a.parity_operator();
    let mut parity = Vec::with_capacity(a.dim * b.dim);
    for &p in &a.parity {
        for &q in &b.parity {
            parity.push(p ^ q);
        }
    }
    let mut gens = Vec::new();
    for g in &a.generators {
        gens.push(NamedMatrix::new(format!("{}(x)1", g.name), g.matrix.kron(&ib)));
    }
    for (g, &p) in b.generators.iter().zip(&b.generator_parity) {
        let left = if p == 1 { &ja } else { &ia };
        gens.push(NamedMatrix::new(format!("1(x){}", g.name), left.kron(&g.matrix)));
    }
    GradedMatrixAlgebra::new(parity, gens).expect("tensor of homogeneous generators is homogeneous")
}

/// `A[eps]` on two copies of the module: `a` acts as `a (x) 1` and the even
/// element `eps` as `J (x) [[0,1],[1,0]]`, so `eps a eps = theta(a)` and
/// `eps^2 = 1`.
pub fn adjoin_epsilon(a: &GradedMatrixAlgebra) -> GradedMatrixAlgebra {
    let i2 = SparseMatrix::identity(2);
    let sx = SparseMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
    let mut parity = Vec::with_capacity(2 * a.dim);
    for &p in &a.parity {
        parity.push(p);
        parity.push(p);
    }
    let mut gens: Vec<NamedMatrix> =
        a.generators.iter().map(|g| NamedMatrix::new(g.name.clone(), g.matrix.kron(&i2))).collect();
    gens.push(NamedMatrix::new("eps", a.parity_operator().kron(&sx)));
    GradedMatrixAlgebra::new(parity, gens).expect("homogeneous by construction")
}

/// Number of blocks of the algebra with the grading forgotten.
pub fn ungraded_block_count(a: &GradedMatrixAlgebra) -> usize {
    ungraded_center(a, &a.span_closure()).len()
}

/// `Z(A, B)`: even elements of `A` commuting with `B`, plus even elements
/// `x` with `x b = theta(b) x` for all `b` in `B`.
#[derive(Debug, Clone, Serialize)]
pub struct GradedCentralizerResult {
    pub ordinary: Vec<SparseMatrix>,
    pub twisted: Vec<SparseMatrix>,
    pub dim: usize,
    pub is_commutative: bool,
}

impl GradedCentralizerResult {
    pub fn basis(&self) -> Vec<SparseMatrix> {
        let n = self.ordinary.first().or(self.twisted.first()).map_or(0, SparseMatrix::nrows);
        let mut ech = Echelon::new(n * n);
        self.ordinary
            .iter()
            .chain(&self.twisted)
            .filter(|m| ech.insert(&m.vectorize()).is_some())
            .cloned()
            .collect()
    }
}

pub fn graded_centralizer(a: &GradedMatrixAlgebra, b_gens: &[SparseMatrix]) -> GradedCentralizerResult {
    let span = a.span_closure();
    let thetas: Vec<SparseMatrix> = b_gens.iter().map(|b| a.theta(b)).collect();
    let ordinary = solve_in_span(&span.even, |x| b_gens.iter().map(|b| x.mul(b).sub(&b.mul(x))).collect());
    let twisted =
        solve_in_span(&span.even, |x| b_gens.iter().zip(&thetas).map(|(b, tb)| x.mul(b).sub(&tb.mul(x))).collect());
    let mut r = GradedCentralizerResult { ordinary, twisted, dim: 0, is_commutative: true };
    let basis = r.basis();
    r.dim = basis.len();
    r.is_commutative = basis.iter().enumerate().all(|(i, x)| basis[i + 1..].iter().all(|y| x.mul(y) == y.mul(x)));
    r
}

/// Dimension of the ordinary centralizer of `B_0` inside `A_0`.
pub fn even_part_centralizer_dim(a: &GradedMatrixAlgebra, b: &GradedMatrixAlgebra) -> usize {
    let span_a = a.span_closure();
    let span_b = b.span_closure();
    solve_in_span(&span_a.even, |x| span_b.even.iter().map(|y| x.mul(y).sub(&y.mul(x))).collect()).len()
}

/// The standard module of `M(r,s)`: even basis vectors first, generated by
/// the unit matrix `E_11` and the chain `E_{k,k+1}`, `E_{k+1,k}`.
pub fn m_standard(r: usize, s: usize) -> GradedMatrixAlgebra {
    let n = r + s;
    let parity: Vec<u8> = (0..n).map(|i| u8::from(i >= r)).collect();
    let unit = |i: usize, j: usize| SparseMatrix::from_triplets(n, n, [(i, j, SqrtNumber::one())]);
    let mut gens = vec![NamedMatrix::new("E_1_1", unit(0, 0))];
    for k in 0..n.saturating_sub(1) {
        gens.push(NamedMatrix::new(format!("E_{}_{}", k + 1, k + 2), unit(k, k + 1)));
        gens.push(NamedMatrix::new(format!("E_{}_{}", k + 2, k + 1), unit(k + 1, k)));
    }
    GradedMatrixAlgebra::new(parity, gens).expect("elementary matrices are homogeneous")
}

/// The standard module of `Q(r)` on a space of dimension `(r, r)`.
pub fn q_standard(r: usize) -> GradedMatrixAlgebra {
    let m = m_standard(r, 0);
    let i2 = SparseMatrix::identity(2);
    // Basis order (i, copy): copy 0 even, copy 1 odd.
    let mut gens: Vec<NamedMatrix> = m.generators.iter().map(|g| NamedMatrix::new(g.name.clone(), g.matrix.kron(&i2))).collect();
    let sx = SparseMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
    gens.push(NamedMatrix::new("U", SparseMatrix::identity(r).kron(&sx)));
    let parity = (0..2 * r).map(|i| (i % 2) as u8).collect();
    GradedMatrixAlgebra::new(parity, gens).expect("homogeneous by construction")
}

/// Block direct sum of two modules of algebras with matching generator lists.
pub fn direct_sum(a: &GradedMatrixAlgebra, b: &GradedMatrixAlgebra) -> GradedMatrixAlgebra {
    let parity = [a.parity.clone(), b.parity.clone()].concat();
    let gens = a
        .generators
        .iter()
        .zip(&b.generators)
        .map(|(x, y)| NamedMatrix::new(x.name.clone(), x.matrix.direct_sum(&y.matrix)))
        .collect();
    GradedMatrixAlgebra::new(parity, gens).expect("homogeneous by construction")
}
