use std::collections::BTreeMap;

use serde::Serialize;

use super::{jm_element, transposition_word, perm_rank, SpinElement, SpinError, SpinTable};
use crate::exactnum::SqrtNumber;
use crate::linalg::{kernel, Echelon, SparseVec};
use crate::shiftedcomb::odd_partitions;

/// Largest rank accepted by the kernel-based centralizer solves.
pub const MAX_CENTRALIZER_RANK: usize = 6;

/// Reduce a list of elements to a linearly independent spanning subset.
pub fn span_basis(elems: &[SpinElement]) -> Vec<SpinElement> {
    let Some(first) = elems.first() else { return Vec::new() };
    let n = first.rank();
    let mut ech = Echelon::new(factorial(n));
    elems.iter().filter(|e| ech.insert(&e.to_vec()).is_some()).cloned().collect()
}

pub fn span_dim(elems: &[SpinElement]) -> usize {
    span_basis(elems).len()
}

/// Whether every element of `sub` lies in the span of `sup`.
pub fn span_contains(sup: &[SpinElement], sub: &[SpinElement]) -> bool {
    let Some(n) = sup.first().or(sub.first()).map(SpinElement::rank) else { return true };
    let mut ech = Echelon::new(factorial(n));
    for e in sup {
        ech.insert(&e.to_vec());
    }
    sub.iter().all(|e| ech.contains(&e.to_vec()))
}

pub fn same_span(a: &[SpinElement], b: &[SpinElement]) -> bool {
    span_contains(a, b) && span_contains(b, a)
}

/// Basis of the unital subalgebra of `A_n` generated by `gens`.
pub fn subalgebra_closure(gens: &[SpinElement], n: usize) -> Result<Vec<SpinElement>, SpinError> {
    let mut ech = Echelon::new(factorial(n));
    let one = SpinElement::one(n);
    ech.insert(&one.to_vec());
    let mut basis = vec![one];
    let mut frontier = 0;
    while frontier < basis.len() {
        let x = basis[frontier].clone();
        frontier += 1;
        for g in gens {
            let y = x.mul(g)?;
            if ech.insert(&y.to_vec()).is_some() {
                basis.push(y);
            }
        }
    }
    Ok(basis)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Indices of basis elements of parity `p` together with the inverse map
/// (`usize::MAX` for the other parity).
pub fn parity_class(table: &SpinTable, p: u8) -> (Vec<usize>, Vec<usize>) {
    let mut members = Vec::new();
    let mut pos = vec![usize::MAX; table.size()];
    for idx in 0..table.size() {
        if table.parity(idx) == p {
            pos[idx] = members.len();
            members.push(idx);
        }
    }
    (members, pos)
}

/// Elements `x` of parity `p` with `x tau_i = twist * tau_i x` for every `i`
/// in `gens`.
fn twisted_commutant(n: usize, p: u8, gens: &[usize], twist: i8) -> Result<Vec<SpinElement>, SpinError> {
    let table = SpinTable::get(n)?;
    let (members, _) = parity_class(&table, p);
    let size = table.size();
    let mut rows: BTreeMap<usize, Vec<(usize, SqrtNumber)>> = BTreeMap::new();
    for (col, &idx) in members.iter().enumerate() {
        for (gi, &i) in gens.iter().enumerate() {
            let (r, s1) = table.right_mul(idx, i);
            let (l, s2) = table.left_mul(i, idx);
            rows.entry(gi * size + r).or_default().push((col, SqrtNumber::from_integer(s1 as i64)));
            rows.entry(gi * size + l).or_default().push((col, SqrtNumber::from_integer(-(twist as i64) * s2 as i64)));
        }
    }
    let rows: Vec<SparseVec> = rows.into_values().map(SparseVec::from_entries).collect();
    Ok(kernel(&rows, members.len())
        .into_iter()
        .map(|v| {
            let global = SparseVec::from_entries(v.into_entries().into_iter().map(|(c, x)| (members[c], x)));
            SpinElement::from_vec(n, &global)
        })
        .collect())
}

/// Basis of `SZ(A_n, A_m)`, the elements supercommuting with `tau_1..tau_{m-1}`.
pub fn supercentralizer(n: usize, m: usize) -> Result<Vec<SpinElement>, SpinError> {
    if n > MAX_CENTRALIZER_RANK {
        return Err(SpinError::SizeLimit { n, limit: MAX_CENTRALIZER_RANK });
    }
    if m == 0 || m > n {
        return Err(SpinError::PointOutOfRange { index: m, n });
    }
    let gens: Vec<usize> = (1..m).collect();
    let mut out = twisted_commutant(n, 0, &gens, 1)?;
    out.extend(twisted_commutant(n, 1, &gens, -1)?);
    Ok(out)
}

/// Sum over pairwise distinct index sequences of products of cycle elements,
/// one cycle of length `alpha_j` per part. Parts equal to 1 are empty factors.
pub fn cycle_sum(alpha: &[usize], n: usize) -> Result<SpinElement, SpinError> {
    let table = SpinTable::get(n)?;
    if alpha.iter().sum::<usize>() > n {
        return Err(SpinError::PointOutOfRange { index: alpha.iter().sum(), n });
    }
    let mut tw = vec![vec![(0usize, 1i8); n + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                let w = transposition_word(i, j, n)?;
                let zero: Vec<usize> = w.perm.iter().map(|x| x - 1).collect();
                tw[i][j] = (perm_rank(&zero), w.sign);
            }
        }
    }
    let parts: Vec<usize> = alpha.iter().copied().filter(|&a| a >= 2).collect();
    let mut acc = vec![0i64; table.size()];
    let mut used = vec![false; n + 1];
    let mut seq: Vec<Vec<usize>> = parts.iter().map(|_| Vec::new()).collect();
    fill(&table, &tw, &parts, 0, &mut seq, &mut used, (0, 1), &mut acc);
    let mut e = SpinElement::zero(n);
    for (idx, c) in acc.into_iter().enumerate() {
        if c != 0 {
            e = e.add(&SpinElement::basis(n, idx, 1).scale(&SqrtNumber::from_integer(c)))?;
        }
    }
    Ok(e)
}

#[allow(clippy::too_many_arguments)]
fn fill(
    table: &SpinTable,
    tw: &[Vec<(usize, i8)>],
    parts: &[usize],
    part: usize,
    seq: &mut Vec<Vec<usize>>,
    used: &mut Vec<bool>,
    cur: (usize, i8),
    acc: &mut [i64],
) {
    if part == parts.len() {
        acc[cur.0] += cur.1 as i64;
        return;
    }
    let n = used.len() - 1;
    let done = seq[part].len() == parts[part];
    if done {
        fill(table, tw, parts, part + 1, seq, used, cur, acc);
        return;
    }
    for i in 1..=n {
        if used[i] {
            continue;
        }
        let next = match seq[part].last() {
            Some(&prev) => {
                let (t, s) = tw[prev][i];
                let (r, s2) = table.basis_product(cur.0, t);
                (r, cur.1 * s * s2)
            }
            None => cur,
        };
        used[i] = true;
        seq[part].push(i);
        fill(table, tw, parts, part, seq, used, next, acc);
        seq[part].pop();
        used[i] = false;
    }
}

/// One cycle sum per partition of `n` into odd parts.
pub fn supercenter_basis(n: usize) -> Result<Vec<SpinElement>, SpinError> {
    odd_partitions(n).iter().map(|alpha| cycle_sum(alpha, n)).collect()
}

/// Graded centralizer `Z(A_n, A_m)`: even elements commuting with
/// `tau_1..tau_{m-1}` plus even elements anticommuting with all of them.
#[derive(Debug, Clone, Serialize)]
pub struct GradedCentralizer {
    pub n: usize,
    pub m: usize,
    pub ordinary: Vec<SpinElement>,
    pub twisted: Vec<SpinElement>,
    pub is_commutative: bool,
}

impl GradedCentralizer {
    pub fn basis(&self) -> Vec<SpinElement> {
        span_basis(&[self.ordinary.clone(), self.twisted.clone()].concat())
    }
}

pub fn graded_centralizer(n: usize, m: usize) -> Result<GradedCentralizer, SpinError> {
    if n > MAX_CENTRALIZER_RANK {
        return Err(SpinError::SizeLimit { n, limit: MAX_CENTRALIZER_RANK });
    }
    if m == 0 || m > n {
        return Err(SpinError::PointOutOfRange { index: m, n });
    }
    let gens: Vec<usize> = (1..m).collect();
    let ordinary = twisted_commutant(n, 0, &gens, 1)?;
    let twisted = if gens.is_empty() { Vec::new() } else { twisted_commutant(n, 0, &gens, -1)? };
    let all = [ordinary.clone(), twisted.clone()].concat();
    let is_commutative = pairwise_commute(&all)?;
    Ok(GradedCentralizer { n, m, ordinary, twisted, is_commutative })
}

pub fn pairwise_commute(elems: &[SpinElement]) -> Result<bool, SpinError> {
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i + 1..] {
            if !a.commutator(b)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The three commutative-chain algebras of `A_1 < ... < A_n` and the checks
/// tying them to the Young-Jucys-Murphy elements.
#[derive(Debug, Clone, Serialize)]
pub struct GzReport {
    pub n: usize,
    pub gz_basis: Vec<SpinElement>,
    pub sgz_basis: Vec<SpinElement>,
    pub sz_basis: Vec<SpinElement>,
    pub sgz_equals_jm_algebra: bool,
    pub sz_equals_jm_squares_algebra: bool,
    pub chain_inclusions: bool,
    pub gz_commutative: bool,
    pub even_centralizer_dim: usize,
    pub maximality_flag: bool,
}

impl GzReport {
    pub fn all_pass(&self) -> bool {
        self.sgz_equals_jm_algebra
            && self.sz_equals_jm_squares_algebra
            && self.chain_inclusions
            && self.gz_commutative
            && self.maximality_flag
    }
}

/// Largest rank accepted by [`gz_algebras`].
pub const MAX_GZ_RANK: usize = 5;

pub fn gz_algebras(n: usize) -> Result<GzReport, SpinError> {
    if n > MAX_GZ_RANK {
        return Err(SpinError::SizeLimit { n, limit: MAX_GZ_RANK });
    }
    if n == 0 {
        return Err(SpinError::PointOutOfRange { index: 0, n });
    }
    let mut gz_gens = Vec::new();
    let mut sgz_gens = Vec::new();
    let mut sz_gens = Vec::new();
    for k in 1..=n {
        for e in graded_centralizer(k, k)?.basis() {
            gz_gens.push(e.embed(n)?);
        }
        for e in supercentralizer(k, k.saturating_sub(1).max(1))? {
            sgz_gens.push(e.embed(n)?);
        }
        for e in supercentralizer(k, k)? {
            sz_gens.push(e.embed(n)?);
        }
    }
    let gz_basis = subalgebra_closure(&gz_gens, n)?;
    let sgz_basis = subalgebra_closure(&sgz_gens, n)?;
    let sz_basis = subalgebra_closure(&sz_gens, n)?;

    let pis: Vec<SpinElement> = (1..=n).map(|k| jm_element(k, n)).collect::<Result<_, _>>()?;
    let pi_sq: Vec<SpinElement> = pis.iter().map(|p| p.mul(p)).collect::<Result<_, _>>()?;
    let jm_alg = subalgebra_closure(&pis, n)?;
    let jm_sq_alg = subalgebra_closure(&pi_sq, n)?;

    let centralizer = even_centralizer(n, &gz_basis)?;
    let even_centralizer_dim = centralizer.len();
    Ok(GzReport {
        n,
        sgz_equals_jm_algebra: same_span(&sgz_basis, &jm_alg),
        sz_equals_jm_squares_algebra: same_span(&sz_basis, &jm_sq_alg),
        chain_inclusions: span_contains(&gz_basis, &sz_basis) && span_contains(&sgz_basis, &gz_basis),
        gz_commutative: pairwise_commute(&gz_basis)?,
        maximality_flag: even_centralizer_dim == gz_basis.len() && span_contains(&gz_basis, &centralizer),
        even_centralizer_dim,
        gz_basis,
        sgz_basis,
        sz_basis,
    })
}

/// Even elements commuting with every element of `elems`.
pub fn even_centralizer(n: usize, elems: &[SpinElement]) -> Result<Vec<SpinElement>, SpinError> {
    let table = SpinTable::get(n)?;
    let size = table.size();
    let (members, _) = parity_class(&table, 0);
    let mut rows: BTreeMap<usize, Vec<(usize, SqrtNumber)>> = BTreeMap::new();
    for (col, &idx) in members.iter().enumerate() {
        let t = SpinElement::basis(n, idx, 1);
        for (gi, g) in elems.iter().enumerate() {
            for (k, v) in t.commutator(g)?.terms() {
                rows.entry(gi * size + k).or_default().push((col, v.clone()));
            }
        }
    }
    let rows: Vec<SparseVec> = rows.into_values().map(SparseVec::from_entries).collect();
    Ok(kernel(&rows, members.len())
        .into_iter()
        .map(|v| {
            let global = SparseVec::from_entries(v.into_entries().into_iter().map(|(c, x)| (members[c], x)));
            SpinElement::from_vec(n, &global)
        })
        .collect())
}
