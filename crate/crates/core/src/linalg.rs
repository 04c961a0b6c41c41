//! Sparse exact linear algebra over [`SqrtNumber`].
//!
//! Everything downstream (supercommutants, centers, relation checks) reduces to
//! three primitives: sparse matrix products, incremental row echelon forms and
//! kernels of sparse systems. Rows are kept sorted by column so that equality
//! is structural.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactnum::SqrtNumber;

/// A sparse vector: strictly ascending indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, SqrtNumber)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, SqrtNumber::one())] }
    }

    /// Build from unsorted, possibly repeated entries; repeats are summed.
    pub fn from_entries<I: IntoIterator<Item = (usize, SqrtNumber)>>(it: I) -> Self {
        let mut map: BTreeMap<usize, SqrtNumber> = BTreeMap::new();
        for (i, x) in it {
            if x.is_zero() {
                continue;
            }
            match map.get_mut(&i) {
                Some(v) => *v += &x,
                None => {
                    map.insert(i, x);
                }
            }
        }
        Self::from_map(map)
    }

    pub fn from_map(map: BTreeMap<usize, SqrtNumber>) -> Self {
        SparseVec { entries: map.into_iter().filter(|(_, x)| !x.is_zero()).collect() }
    }

    pub fn entries(&self) -> &[(usize, SqrtNumber)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, SqrtNumber)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Option<&SqrtNumber> {
        self.entries.binary_search_by_key(&i, |e| e.0).ok().map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<&(usize, SqrtNumber)> {
        self.entries.first()
    }

    pub fn scale(&self, c: &SqrtNumber) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &SparseVec, c: &SqrtNumber) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                out.push((b[j].0, &b[j].1 * c));
                j += 1;
            } else {
                let v = &a[i].1 + &(&b[j].1 * c);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        self.add_scaled(other, &SqrtNumber::one())
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        self.add_scaled(other, &SqrtNumber::from_integer(-1))
    }

    pub fn dot(&self, other: &SparseVec) -> SqrtNumber {
        let mut acc = SqrtNumber::zero();
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += &(&a[i].1 * &b[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Largest absolute entry as a float, for defect reporting.
    pub fn max_abs_f64(&self) -> f64 {
        self.entries.iter().map(|(_, x)| x.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Combine `sum c_k * v_k`.
    pub fn linear_combination<'a, I>(terms: I) -> SparseVec
    where
        I: IntoIterator<Item = (&'a SqrtNumber, &'a SparseVec)>,
    {
        let mut map: BTreeMap<usize, SqrtNumber> = BTreeMap::new();
        for (c, v) in terms {
            if c.is_zero() {
                continue;
            }
            for (i, x) in &v.entries {
                let p = x * c;
                match map.get_mut(i) {
                    Some(e) => *e += &p,
                    None => {
                        map.insert(*i, p);
                    }
                }
            }
        }
        Self::from_map(map)
    }
}

/// A sparse row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

const PAR_THRESHOLD: usize = 64;

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![SparseVec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &SqrtNumber::one())
    }

    pub fn scalar(n: usize, c: &SqrtNumber) -> Self {
        let rows = (0..n)
            .map(|i| if c.is_zero() { SparseVec::new() } else { SparseVec { entries: vec![(i, c.clone())] } })
            .collect();
        SparseMatrix { nrows: n, ncols: n, rows }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.entries.last().is_none_or(|e| e.0 < ncols)));
        SparseMatrix { nrows: rows.len(), ncols, rows }
    }

    /// Build from `(row, col, value)` triplets; repeats are summed.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, SqrtNumber)>,
    {
        let mut buckets: Vec<Vec<(usize, SqrtNumber)>> = vec![Vec::new(); nrows];
        for (r, c, x) in it {
            assert!(r < nrows && c < ncols, "triplet ({r},{c}) out of bounds {nrows}x{ncols}");
            buckets[r].push((c, x));
        }
        let rows = buckets.into_iter().map(SparseVec::from_entries).collect();
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn from_dense(rows: &[Vec<SqrtNumber>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "ragged dense matrix");
                SparseVec { entries: r.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect() }
            })
            .collect();
        SparseMatrix { nrows: rows.len(), ncols, rows: data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<SqrtNumber>> =
            rows.iter().map(|r| r.iter().map(|&x| SqrtNumber::from_integer(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn to_dense(&self) -> Vec<Vec<SqrtNumber>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![SqrtNumber::zero(); self.ncols];
                for (c, x) in &r.entries {
                    d[*c] = x.clone();
                }
                d
            })
            .collect()
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> SqrtNumber {
        self.rows[r].get(c).cloned().unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(SparseVec::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.rows.iter().enumerate().all(|(i, r)| r.entries.len() == 1 && r.entries[0].0 == i && r.entries[0].1.is_one())
    }

    /// Iterate over stored `(row, col, value)` entries.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &SqrtNumber)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.entries.iter().map(move |(c, x)| (r, *c, x)))
    }

    pub fn transpose(&self) -> Self {
        let mut buckets: Vec<Vec<(usize, SqrtNumber)>> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, x) in &row.entries {
                buckets[*c].push((r, x.clone()));
            }
        }
        let rows = buckets.into_iter().map(|entries| SparseVec { entries }).collect();
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, rows }
    }

    pub fn scale(&self, c: &SqrtNumber) -> Self {
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, rows: self.rows.iter().map(|r| r.scale(c)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&SqrtNumber::from_integer(-1))
    }

    pub fn add_scaled(&self, other: &SparseMatrix, c: &SqrtNumber) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "shape mismatch in add");
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.add_scaled(b, c)).collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn add(&self, other: &SparseMatrix) -> Self {
        self.add_scaled(other, &SqrtNumber::one())
    }

    pub fn sub(&self, other: &SparseMatrix) -> Self {
        self.add_scaled(other, &SqrtNumber::from_integer(-1))
    }

    fn mul_row(&self, row: &SparseVec, other: &SparseMatrix) -> SparseVec {
        match row.entries.as_slice() {
            [] => SparseVec::new(),
            [(k, x)] => other.rows[*k].scale(x),
            _ => SparseVec::linear_combination(row.entries.iter().map(|(k, x)| (x, &other.rows[*k]))),
        }
    }

    pub fn mul(&self, other: &SparseMatrix) -> Self {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in mul");
        let rows: Vec<SparseVec> = if self.nrows >= PAR_THRESHOLD {
            self.rows.par_iter().map(|r| self.mul_row(r, other)).collect()
        } else {
            self.rows.iter().map(|r| self.mul_row(r, other)).collect()
        };
        SparseMatrix { nrows: self.nrows, ncols: other.ncols, rows }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let entries = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let d = r.dot(v);
                (!d.is_zero()).then_some((i, d))
            })
            .collect();
        SparseVec { entries }
    }

    /// `self * other - sign * other * self`, where `sign` is +1 or -1.
    pub fn graded_commutator(&self, other: &SparseMatrix, sign: i64) -> Self {
        self.mul(other).add_scaled(&other.mul(self), &SqrtNumber::from_integer(-sign))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = SparseMatrix::identity(self.nrows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> SqrtNumber {
        let mut acc = SqrtNumber::zero();
        for (i, r) in self.rows.iter().enumerate() {
            if let Some(x) = r.get(i) {
                acc += x;
            }
        }
        acc
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &SparseMatrix) -> Self {
        let (m, n) = (other.nrows, other.ncols);
        let mut rows = Vec::with_capacity(self.nrows * m);
        for ra in &self.rows {
            for rb in &other.rows {
                let mut entries = Vec::with_capacity(ra.nnz() * rb.nnz());
                for (ca, xa) in &ra.entries {
                    for (cb, xb) in &rb.entries {
                        entries.push((ca * n + cb, xa * xb));
                    }
                }
                rows.push(SparseVec { entries });
            }
        }
        SparseMatrix { nrows: self.nrows * m, ncols: self.ncols * n, rows }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &SparseMatrix) -> Self {
        let mut rows = Vec::with_capacity(self.nrows + other.nrows);
        for r in &self.rows {
            rows.push(r.clone());
        }
        for r in &other.rows {
            rows.push(SparseVec { entries: r.entries.iter().map(|(c, x)| (c + self.ncols, x.clone())).collect() });
        }
        SparseMatrix { nrows: self.nrows + other.nrows, ncols: self.ncols + other.ncols, rows }
    }

    /// Restrict to the given row and column index lists.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.ncols];
        for (k, &c) in col_idx.iter().enumerate() {
            pos[c] = k;
        }
        let rows = row_idx
            .iter()
            .map(|&r| {
                let mut entries: Vec<(usize, SqrtNumber)> = self.rows[r]
                    .entries
                    .iter()
                    .filter(|(c, _)| pos[*c] != usize::MAX)
                    .map(|(c, x)| (pos[*c], x.clone()))
                    .collect();
                entries.sort_by_key(|e| e.0);
                SparseVec { entries }
            })
            .collect();
        SparseMatrix { nrows: row_idx.len(), ncols: col_idx.len(), rows }
    }

    /// Flatten to a vector indexed by `row * ncols + col`.
    pub fn vectorize(&self) -> SparseVec {
        let entries = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.entries.iter().map(move |(c, x)| (r * self.ncols + c, x.clone())))
            .collect();
        SparseVec { entries }
    }

    pub fn from_vectorized(nrows: usize, ncols: usize, v: &SparseVec) -> Self {
        Self::from_triplets(nrows, ncols, v.entries.iter().map(|(i, x)| (i / ncols, i % ncols, x.clone())))
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.rows.iter().map(SparseVec::max_abs_f64).fold(0.0, f64::max)
    }

    /// Whether the matrix is a scalar multiple of the identity; returns the scalar.
    pub fn as_scalar(&self) -> Option<SqrtNumber> {
        if !self.is_square() {
            return None;
        }
        if self.nrows == 0 {
            return Some(SqrtNumber::zero());
        }
        let c = self.get(0, 0);
        let ok = self.rows.iter().enumerate().all(|(i, r)| {
            if c.is_zero() {
                r.is_zero()
            } else {
                r.entries.len() == 1 && r.entries[0].0 == i && r.entries[0].1 == c
            }
        });
        ok.then_some(c)
    }

    /// Sum of `c_k * M_k`.
    pub fn linear_combination(nrows: usize, ncols: usize, terms: &[(SqrtNumber, &SparseMatrix)]) -> Self {
        let rows = (0..nrows)
            .map(|r| SparseVec::linear_combination(terms.iter().map(|(c, m)| (c, &m.rows[r]))))
            .collect();
        SparseMatrix { nrows, ncols, rows }
    }
}

/// Serialized form: dense rows of [`SqrtNumber`].
impl Serialize for SparseMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_dense().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SparseMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dense: Vec<Vec<SqrtNumber>> = Vec::deserialize(deserializer)?;
        if let Some(first) = dense.first() {
            if dense.iter().any(|r| r.len() != first.len()) {
                return Err(serde::de::Error::custom("ragged matrix rows"));
            }
        }
        Ok(SparseMatrix::from_dense(&dense))
    }
}

/// Incremental reduced row echelon form.
///
/// Every inserted row is fully reduced against the existing pivots before it
/// becomes a pivot itself, so a row never contains the pivot column of an
/// older row. Optionally records, for each stored row, the combination of
/// inserted vectors that produced it.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, (SparseVec, SparseVec)>,
    order: Vec<usize>,
    inserted: usize,
    track: bool,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new(), order: Vec::new(), inserted: 0, track: false }
    }

    /// An echelon form that also records coordinates relative to inserted vectors.
    pub fn tracking(ncols: usize) -> Self {
        Echelon { track: true, ..Self::new(ncols) }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    fn reduce_with_track(&self, v: &SparseVec, mut t: SparseVec) -> (SparseVec, SparseVec) {
        let mut work: BTreeMap<usize, SqrtNumber> = v.entries.iter().cloned().collect();
        let mut cursor = 0usize;
        while let Some((&c, x)) = work.range(cursor..).next() {
            if let Some((row, comb)) = self.pivots.get(&c) {
                let f = -x;
                for (k, y) in &row.entries {
                    let delta = y * &f;
                    match work.get_mut(k) {
                        Some(e) => {
                            *e += &delta;
                            if e.is_zero() {
                                work.remove(k);
                            }
                        }
                        None => {
                            work.insert(*k, delta);
                        }
                    }
                }
                if self.track {
                    t = t.add_scaled(comb, &f);
                }
            }
            cursor = c + 1;
        }
        (SparseVec::from_map(work), t)
    }

    /// Fully reduce `v` against the current pivots.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_with_track(v, SparseVec::new()).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert a vector; returns its pivot column when it was independent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let idx = self.inserted;
        self.inserted += 1;
        let start = if self.track { SparseVec::unit(idx) } else { SparseVec::new() };
        let (r, t) = self.reduce_with_track(v, start);
        let (c, lead) = r.leading()?.clone();
        let inv = lead.inverse().expect("leading entry is nonzero");
        let row = r.scale(&inv);
        let comb = if self.track { t.scale(&inv) } else { SparseVec::new() };
        self.pivots.insert(c, (row, comb));
        self.order.push(c);
        Some(c)
    }

    /// Coordinates of `v` relative to the inserted vectors, when `v` lies in
    /// their span. Requires a tracking echelon form.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "coordinates() needs a tracking echelon form");
        let (r, t) = self.reduce_with_track(v, SparseVec::new());
        r.is_zero().then(|| t.scale(&SqrtNumber::from_integer(-1)))
    }

    /// Back-substitute so each pivot row vanishes on every other pivot column.
    fn back_substitute(&mut self) {
        for k in (0..self.order.len()).rev() {
            let c = self.order[k];
            let (row, comb) = self.pivots.get(&c).cloned().expect("pivot present");
            let mut work = row;
            let mut t = comb;
            for &c2 in &self.order[k + 1..] {
                if let Some(x) = work.get(c2).cloned() {
                    let (r2, t2) = &self.pivots[&c2];
                    let f = -&x;
                    work = work.add_scaled(r2, &f);
                    if self.track {
                        t = t.add_scaled(t2, &f);
                    }
                }
            }
            self.pivots.insert(c, (work, t));
        }
    }

    /// Basis of the null space of the inserted rows, one vector per free column.
    pub fn kernel(mut self) -> Vec<SparseVec> {
        self.back_substitute();
        let mut free_entries: BTreeMap<usize, Vec<(usize, SqrtNumber)>> = BTreeMap::new();
        for (&p, (row, _)) in &self.pivots {
            for (c, x) in row.entries.iter().skip(1) {
                free_entries.entry(*c).or_default().push((p, -x));
            }
        }
        (0..self.ncols)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|f| {
                let mut e = free_entries.remove(&f).unwrap_or_default();
                e.push((f, SqrtNumber::one()));
                e.sort_by_key(|x| x.0);
                SparseVec { entries: e }
            })
            .collect()
    }

    /// The stored rows after back substitution (a basis of the row space).
    pub fn reduced_rows(mut self) -> Vec<SparseVec> {
        self.back_substitute();
        self.pivots.into_values().map(|(r, _)| r).collect()
    }
}

/// Null space of the system whose rows are `rows`.
pub fn kernel(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.kernel()
}

pub fn rank(rows: &[SparseVec], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Null space of a matrix acting on column vectors.
pub fn matrix_kernel(m: &SparseMatrix) -> Vec<SparseVec> {
    kernel(m.rows(), m.ncols())
}

/// A subspace given by a kernel-style basis together with the coordinate
/// positions that identify each basis vector (one free column per vector).
#[derive(Clone, Debug)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<SparseVec>,
    pub coord_rows: Vec<usize>,
}

impl Subspace {
    /// Subspace spanned by the kernel basis returned from [`Echelon::kernel`].
    /// Each kernel vector has a `1` in its own free column and `0` in the
    /// other free columns, so those columns serve as coordinates. Pivot
    /// entries always sit left of the free column, which is therefore last.
    pub fn from_kernel(ambient: usize, basis: Vec<SparseVec>) -> Self {
        let coord_rows = basis
            .iter()
            .map(|v| v.entries().last().map(|(i, _)| *i).expect("kernel vectors are nonzero"))
            .collect::<Vec<_>>();
        let s = Subspace { ambient, basis, coord_rows };
        debug_assert!(s.coordinates_are_valid());
        s
    }

    /// Subspace spanned by arbitrary vectors, stored in reduced row echelon
    /// form. Pivot columns serve as coordinates.
    pub fn from_spanning(ambient: usize, vectors: &[SparseVec]) -> Self {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            e.insert(v);
        }
        let basis = e.reduced_rows();
        let coord_rows = basis.iter().map(|v| v.leading().expect("nonzero row").0).collect();
        let s = Subspace { ambient, basis, coord_rows };
        debug_assert!(s.coordinates_are_valid());
        s
    }

    /// Coordinates of a vector known to lie in the subspace.
    pub fn coordinates(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_entries(
            self.coord_rows.iter().enumerate().filter_map(|(k, &r)| v.get(r).map(|x| (k, x.clone()))),
        )
    }

    fn coordinates_are_valid(&self) -> bool {
        self.basis.iter().enumerate().all(|(k, v)| {
            self.coord_rows.iter().enumerate().all(|(j, &r)| {
                let x = v.get(r).cloned().unwrap_or_default();
                if j == k {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Embedding matrix (ambient x dim) whose columns are the basis vectors.
    pub fn embedding(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.ambient,
            self.basis.len(),
            self.basis.iter().enumerate().flat_map(|(k, v)| v.entries().iter().map(move |(i, x)| (*i, k, x.clone()))),
        )
    }

    /// Matrix of an operator that preserves the subspace, in subspace coordinates.
    pub fn restrict(&self, op: &SparseMatrix) -> SparseMatrix {
        let image = op.mul(&self.embedding());
        image.submatrix(&self.coord_rows, &(0..self.basis.len()).collect::<Vec<_>>())
    }
}
