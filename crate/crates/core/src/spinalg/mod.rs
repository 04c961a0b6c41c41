//! The spin symmetric group algebra `A_n`: odd generators `tau_1..tau_{n-1}`
//! with `tau_k^2 = 1`, `(tau_k tau_{k+1})^3 = 1` and `(tau_k tau_l)^2 = -1`
//! for `|k - l| > 1`.
//!
//! The algebra has one basis element `t_sigma` per permutation, namely the
//! product of generators along a fixed reduced word of `sigma`. Products are
//! tracked exactly as `(sign, permutation)` pairs through a memoized table of
//! right multiplications by generators.
//!
//! Signs come from an invariant of reduced words. Write the inversion
//! sequence of a reduced word `s_{i1} ... s_{ik}` as the transpositions
//! `x_{j-1} s_{ij} x_{j-1}^{-1}`, with `x_{j-1}` the prefix product. A
//! commutation move swaps two adjacent entries, and those entries are always
//! disjoint transpositions. A braid move reverses three mutually overlapping
//! ones. The parity of the number of out-of-order disjoint pairs is therefore
//! flipped by exactly the moves that flip the sign of the product, which
//! makes it a consistent sign for every reduced word.

mod center;
mod identities;

pub use center::*;
pub use identities::*;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::SqrtNumber;
use crate::linalg::SparseVec;

/// Largest rank for which a multiplication table is built.
pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpinError {
    #[error("generator index {index} out of range for rank {n} (expected 1..={max})", max = n.saturating_sub(1))]
    IndexOutOfRange { index: usize, n: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("transposition indices must differ (got {0} twice)")]
    EqualIndices(usize),
    #[error("index {index} out of range 1..={n}")]
    PointOutOfRange { index: usize, n: usize },
    #[error("rank {n} exceeds the limit {limit} for this operation")]
    SizeLimit { n: usize, limit: usize },
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lehmer code `c_j = #{k > j : p(k) < p(j)}` of a 0-based permutation.
pub fn lehmer_code(p: &[usize]) -> Vec<usize> {
    (0..p.len()).map(|j| p[j + 1..].iter().filter(|&&x| x < p[j]).count()).collect()
}

/// Lexicographic rank of a 0-based permutation.
pub fn perm_rank(p: &[usize]) -> usize {
    let n = p.len();
    lehmer_code(p).iter().enumerate().map(|(j, c)| c * factorial(n - 1 - j)).sum()
}

/// Inverse of [`perm_rank`].
pub fn perm_unrank(mut r: usize, n: usize) -> Vec<usize> {
    let mut avail: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let f = factorial(n - 1 - j);
        let c = r / f;
        r %= f;
        out.push(avail.remove(c));
    }
    out
}

/// The canonical reduced word: reading the Lehmer code row by row, row `j`
/// contributes `s_{j+c_j-1} ... s_{j+1} s_j` (1-based generator indices).
pub fn canonical_word(p: &[usize]) -> Vec<usize> {
    let mut w = Vec::new();
    for (j, &c) in lehmer_code(p).iter().enumerate() {
        w.extend((j + 1..=j + c).rev());
    }
    w
}

/// Parity of the number of out-of-order pairs of disjoint transpositions in
/// the inversion sequence of `word` (generator indices are 1-based).
pub fn word_cocycle(word: &[usize], n: usize) -> bool {
    let mut x: Vec<usize> = (0..n).collect();
    let mut inv: Vec<(usize, usize)> = Vec::with_capacity(word.len());
    for &i in word {
        let (a, b) = (x[i - 1], x[i]);
        inv.push((a.min(b), a.max(b)));
        x.swap(i - 1, i);
    }
    let mut parity = false;
    for j in 0..inv.len() {
        for l in j + 1..inv.len() {
            let (s, t) = (inv[j], inv[l]);
            let disjoint = s.0 != t.0 && s.0 != t.1 && s.1 != t.0 && s.1 != t.1;
            if disjoint && s > t {
                parity = !parity;
            }
        }
    }
    parity
}

/// Memoized structure of `A_n`: permutations, canonical words and the
/// signed action of each generator from either side.
#[derive(Debug)]
pub struct SpinTable {
    n: usize,
    perms: Vec<Vec<usize>>,
    words: Vec<Vec<usize>>,
    right: Vec<(u32, i8)>,
    left: Vec<(u32, i8)>,
}

impl SpinTable {
    fn build(n: usize) -> Self {
        let size = factorial(n);
        let perms: Vec<Vec<usize>> = (0..size).map(|r| perm_unrank(r, n)).collect();
        let words: Vec<Vec<usize>> = perms.iter().map(|p| canonical_word(p)).collect();
        let f: Vec<bool> = words.iter().map(|w| word_cocycle(w, n)).collect();
        let g = n.saturating_sub(1);
        let mut right = vec![(0u32, 1i8); size * g];
        for (idx, p) in perms.iter().enumerate() {
            for i in 1..=g {
                let mut q = p.clone();
                q.swap(i - 1, i);
                let target = perm_rank(&q);
                let up = p[i - 1] < p[i];
                let sign = if up {
                    let mut w = words[idx].clone();
                    w.push(i);
                    word_cocycle(&w, n) != f[target]
                } else {
                    let mut w = words[target].clone();
                    w.push(i);
                    word_cocycle(&w, n) != f[idx]
                };
                right[idx * g + i - 1] = (target as u32, if sign { -1 } else { 1 });
            }
        }
        let mut table = SpinTable { n, perms, words, right, left: Vec::new() };
        let mut left = vec![(0u32, 1i8); size * g];
        for idx in 0..size {
            for i in 1..=g {
                let start = table.right[i - 1];
                let (t, s) = table.apply_word(start.0 as usize, start.1, &table.words[idx]);
                left[idx * g + i - 1] = (t as u32, s);
            }
        }
        table.left = left;
        table
    }

    /// The table for rank `n`, built on first use.
    pub fn get(n: usize) -> Result<Arc<SpinTable>, SpinError> {
        static TABLES: [OnceLock<Arc<SpinTable>>; MAX_RANK + 1] = [const { OnceLock::new() }; MAX_RANK + 1];
        if n > MAX_RANK {
            return Err(SpinError::SizeLimit { n, limit: MAX_RANK });
        }
        Ok(TABLES[n].get_or_init(|| Arc::new(SpinTable::build(n))).clone())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.perms.len()
    }

    /// 0-based one-line notation of the permutation with index `idx`.
    pub fn perm(&self, idx: usize) -> &[usize] {
        &self.perms[idx]
    }

    pub fn word(&self, idx: usize) -> &[usize] {
        &self.words[idx]
    }

    pub fn length(&self, idx: usize) -> usize {
        self.words[idx].len()
    }

    pub fn parity(&self, idx: usize) -> u8 {
        (self.words[idx].len() % 2) as u8
    }

    pub fn index_of(&self, perm: &[usize]) -> usize {
        perm_rank(perm)
    }

    /// `t_idx * tau_i = sign * t_target`.
    pub fn right_mul(&self, idx: usize, i: usize) -> (usize, i8) {
        let (t, s) = self.right[idx * (self.n - 1) + i - 1];
        (t as usize, s)
    }

    /// `tau_i * t_idx = sign * t_target`.
    pub fn left_mul(&self, i: usize, idx: usize) -> (usize, i8) {
        let (t, s) = self.left[idx * (self.n - 1) + i - 1];
        (t as usize, s)
    }

    fn apply_word(&self, mut idx: usize, mut sign: i8, word: &[usize]) -> (usize, i8) {
        for &i in word {
            let (t, s) = self.right_mul(idx, i);
            idx = t;
            sign *= s;
        }
        (idx, sign)
    }

    /// `t_a * t_b = sign * t_c`.
    pub fn basis_product(&self, a: usize, b: usize) -> (usize, i8) {
        self.apply_word(a, 1, &self.words[b])
    }
}

/// A signed basis element: `sign * t_perm`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpinWord {
    pub sign: i8,
    /// One-line notation, 1-based.
    pub perm: Vec<usize>,
    pub n: usize,
}

/// Reduce a word in the generators to `sign * t_perm` by left-to-right
/// application of the generator table.
pub fn canonical_form(word: &[usize], n: usize) -> Result<SpinWord, SpinError> {
    let table = SpinTable::get(n)?;
    for &i in word {
        if i == 0 || i >= n {
            return Err(SpinError::IndexOutOfRange { index: i, n });
        }
    }
    let (idx, sign) = table.apply_word(0, 1, word);
    Ok(SpinWord { sign, perm: table.perm(idx).iter().map(|x| x + 1).collect(), n })
}

/// An element of `A_n`: a combination of canonical basis elements, keyed by
/// permutation index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinElement {
    n: usize,
    coeffs: BTreeMap<usize, SqrtNumber>,
}

impl SpinElement {
    pub fn zero(n: usize) -> Self {
        SpinElement { n, coeffs: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(n, 0, 1)
    }

    pub fn scalar(n: usize, c: SqrtNumber) -> Self {
        let mut e = Self::zero(n);
        if !c.is_zero() {
            e.coeffs.insert(0, c);
        }
        e
    }

    pub fn basis(n: usize, idx: usize, sign: i8) -> Self {
        let mut e = Self::zero(n);
        e.coeffs.insert(idx, SqrtNumber::from_integer(sign as i64));
        e
    }

    /// The generator `tau_i`.
    pub fn generator(i: usize, n: usize) -> Result<Self, SpinError> {
        let w = canonical_form(&[i], n)?;
        Self::from_spin_word(&w)
    }

    pub fn from_spin_word(w: &SpinWord) -> Result<Self, SpinError> {
        let zero_based = one_based_to_zero(&w.perm, w.n)?;
        Ok(Self::basis(w.n, perm_rank(&zero_based), w.sign))
    }

    /// Product of generators along `word`.
    pub fn from_word(word: &[usize], n: usize) -> Result<Self, SpinError> {
        Self::from_spin_word(&canonical_form(word, n)?)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &SqrtNumber)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, idx: usize) -> SqrtNumber {
        self.coeffs.get(&idx).cloned().unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    fn table(&self) -> Arc<SpinTable> {
        SpinTable::get(self.n).expect("rank validated at construction")
    }

    /// `Some(p)` when every term has parity `p`; zero counts as even.
    pub fn parity(&self) -> Option<u8> {
        let t = self.table();
        let mut it = self.coeffs.keys().map(|&k| t.parity(k));
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    fn check_rank(&self, other: &SpinElement) -> Result<(), SpinError> {
        if self.n != other.n {
            return Err(SpinError::RankMismatch(self.n, other.n));
        }
        Ok(())
    }

    fn insert_add(map: &mut BTreeMap<usize, SqrtNumber>, k: usize, v: SqrtNumber) {
        if v.is_zero() {
            return;
        }
        let zero = match map.get_mut(&k) {
            Some(e) => {
                *e += &v;
                e.is_zero()
            }
            None => {
                map.insert(k, v);
                false
            }
        };
        if zero {
            map.remove(&k);
        }
    }

    pub fn add(&self, other: &SpinElement) -> Result<Self, SpinError> {
        self.check_rank(other)?;
        let mut out = self.coeffs.clone();
        for (k, v) in &other.coeffs {
            Self::insert_add(&mut out, *k, v.clone());
        }
        Ok(SpinElement { n: self.n, coeffs: out })
    }

    pub fn sub(&self, other: &SpinElement) -> Result<Self, SpinError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&SqrtNumber::from_integer(-1))
    }

    pub fn scale(&self, c: &SqrtNumber) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        SpinElement { n: self.n, coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Bilinear extension of the basis product.
    pub fn mul(&self, other: &SpinElement) -> Result<Self, SpinError> {
        self.check_rank(other)?;
        let t = self.table();
        let mut out: BTreeMap<usize, SqrtNumber> = BTreeMap::new();
        for (&b, y) in &other.coeffs {
            let word = t.word(b);
            for (&a, x) in &self.coeffs {
                let (c, s) = t.apply_word(a, 1, word);
                let prod = x * y;
                Self::insert_add(&mut out, c, if s < 0 { -prod } else { prod });
            }
        }
        Ok(SpinElement { n: self.n, coeffs: out })
    }

    /// `self * tau_i`, using the table directly.
    pub fn mul_generator(&self, i: usize) -> Self {
        let t = self.table();
        let mut out = BTreeMap::new();
        for (&a, x) in &self.coeffs {
            let (c, s) = t.right_mul(a, i);
            Self::insert_add(&mut out, c, if s < 0 { -x } else { x.clone() });
        }
        SpinElement { n: self.n, coeffs: out }
    }

    /// `tau_i * self`.
    pub fn generator_mul(&self, i: usize) -> Self {
        let t = self.table();
        let mut out = BTreeMap::new();
        for (&a, x) in &self.coeffs {
            let (c, s) = t.left_mul(i, a);
            Self::insert_add(&mut out, c, if s < 0 { -x } else { x.clone() });
        }
        SpinElement { n: self.n, coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Result<Self, SpinError> {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `a*b - (-1)^(p(a)p(b)) b*a` for homogeneous arguments.
    pub fn supercommutator(&self, other: &SpinElement) -> Result<Self, SpinError> {
        let pa = self.parity().unwrap_or(0);
        let pb = other.parity().unwrap_or(0);
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        if pa * pb == 1 {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }

    pub fn commutator(&self, other: &SpinElement) -> Result<Self, SpinError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Embed into a larger rank (permutations fixing the new points). The
    /// canonical word of an embedded permutation is unchanged, so no signs move.
    pub fn embed(&self, n: usize) -> Result<Self, SpinError> {
        if n < self.n {
            return Err(SpinError::RankMismatch(self.n, n));
        }
        let small = self.table();
        SpinTable::get(n)?;
        let mut coeffs = BTreeMap::new();
        for (&k, v) in &self.coeffs {
            let mut p = small.perm(k).to_vec();
            p.extend(self.n..n);
            coeffs.insert(perm_rank(&p), v.clone());
        }
        Ok(SpinElement { n, coeffs })
    }

    /// Coordinate vector indexed by permutation rank.
    pub fn to_vec(&self) -> SparseVec {
        SparseVec::from_map(self.coeffs.clone())
    }

    pub fn from_vec(n: usize, v: &SparseVec) -> Self {
        SpinElement { n, coeffs: v.entries().iter().cloned().collect() }
    }

    /// Coordinate vector restricted to basis elements of parity `p`, indexed
    /// by position within that parity class.
    pub fn to_parity_vec(&self, positions: &[usize]) -> SparseVec {
        SparseVec::from_entries(self.coeffs.iter().filter_map(|(k, v)| {
            let pos = positions[*k];
            (pos != usize::MAX).then(|| (pos, v.clone()))
        }))
    }
}

fn one_based_to_zero(perm: &[usize], n: usize) -> Result<Vec<usize>, SpinError> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(SpinError::InvalidPermutation(perm.to_vec()));
    }
    let mut out = Vec::with_capacity(n);
    for &x in perm {
        if x == 0 || x > n || seen[x - 1] {
            return Err(SpinError::InvalidPermutation(perm.to_vec()));
        }
        seen[x - 1] = true;
        out.push(x - 1);
    }
    Ok(out)
}

/// The element `tau_{ij}`, from `tau_{i,i+1} = tau_i`,
/// `tau_{ij} = -tau_{i,j-1} tau_{j-1} tau_{i,j-1}` and `tau_{ji} = -tau_{ij}`.
pub fn transposition_element(i: usize, j: usize, n: usize) -> Result<SpinElement, SpinError> {
    let w = transposition_word(i, j, n)?;
    SpinElement::from_spin_word(&w)
}

/// `tau_{ij}` as a signed basis element.
pub fn transposition_word(i: usize, j: usize, n: usize) -> Result<SpinWord, SpinError> {
    for x in [i, j] {
        if x == 0 || x > n {
            return Err(SpinError::PointOutOfRange { index: x, n });
        }
    }
    if i == j {
        return Err(SpinError::EqualIndices(i));
    }
    let table = SpinTable::get(n)?;
    let (lo, hi) = (i.min(j), i.max(j));
    let (mut idx, mut sign) = table.right_mul(0, lo);
    for k in lo + 2..=hi {
        // tau_{lo,k} = -tau_{lo,k-1} tau_{k-1} tau_{lo,k-1}
        let (a, s1) = table.right_mul(idx, k - 1);
        let (b, s2) = table.basis_product(a, idx);
        idx = b;
        sign = -(sign * s1 * s2 * sign);
    }
    if j < i {
        sign = -sign;
    }
    Ok(SpinWord { sign, perm: table.perm(idx).iter().map(|x| x + 1).collect(), n })
}

/// The Young-Jucys-Murphy element `pi_k = tau_{1k} + ... + tau_{k-1,k}`.
pub fn jm_element(k: usize, n: usize) -> Result<SpinElement, SpinError> {
    if k == 0 || k > n {
        return Err(SpinError::PointOutOfRange { index: k, n });
    }
    let mut acc = SpinElement::zero(n);
    SpinTable::get(n)?;
    for i in 1..k {
        acc = acc.add(&transposition_element(i, k, n)?)?;
    }
    Ok(acc)
}

/// Cycle product `tau_{i1 i2} tau_{i2 i3} ... tau_{i(p-1) ip}`; empty gives 1.
pub fn cycle_product(indices: &[usize], n: usize) -> Result<SpinElement, SpinError> {
    let mut acc = SpinElement::one(n);
    for w in indices.windows(2) {
        acc = acc.mul(&transposition_element(w[0], w[1], n)?)?;
    }
    Ok(acc)
}

#[derive(Serialize, Deserialize)]
struct ElementTermRepr {
    perm: Vec<usize>,
    coeff: SqrtNumber,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    n: usize,
    terms: Vec<ElementTermRepr>,
}

impl Serialize for SpinElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let t = self.table();
        ElementRepr {
            n: self.n,
            terms: self
                .coeffs
                .iter()
                .map(|(k, v)| ElementTermRepr { perm: t.perm(*k).iter().map(|x| x + 1).collect(), coeff: v.clone() })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpinElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        SpinTable::get(repr.n).map_err(serde::de::Error::custom)?;
        let mut e = SpinElement::zero(repr.n);
        for t in repr.terms {
            let p = one_based_to_zero(&t.perm, repr.n).map_err(serde::de::Error::custom)?;
            SpinElement::insert_add(&mut e.coeffs, perm_rank(&p), t.coeff);
        }
        Ok(e)
    }
}
