use serde::Serialize;

use super::{cycle_product, jm_element, subalgebra_closure, transposition_element, SpinElement, SpinError};
use crate::exactnum::SqrtNumber;

/// One checked identity: `lhs - rhs` must vanish.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub indices: Vec<usize>,
    pub pass: bool,
    /// `lhs - rhs` when nonzero.
    pub difference: Option<SpinElement>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub checks: Vec<IdentityCheck>,
    /// Free-form observations, e.g. which sign convention matched.
    pub notes: Vec<String>,
    pub all_pass: bool,
}

impl IdentityReport {
    fn new(n: usize) -> Self {
        IdentityReport { n, checks: Vec::new(), notes: Vec::new(), all_pass: true }
    }

    fn record(&mut self, identity: &str, indices: &[usize], lhs: &SpinElement, rhs: &SpinElement) -> Result<bool, SpinError> {
        let diff = lhs.sub(rhs)?;
        let pass = diff.is_zero();
        self.all_pass &= pass;
        self.checks.push(IdentityCheck {
            identity: identity.to_string(),
            indices: indices.to_vec(),
            pass,
            difference: (!pass).then_some(diff),
        });
        Ok(pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn int(n: usize, c: i64) -> SpinElement {
    SpinElement::scalar(n, SqrtNumber::from_integer(c))
}

/// Largest rank accepted by the symbolic identity checks.
pub const MAX_IDENTITY_RANK: usize = 6;

/// Check the transposition relations, the Young-Jucys-Murphy relations and
/// the lemma on `F_i = tau_i (pi_i^2 - pi_{i+1}^2) + (pi_{i+1} - pi_i)`.
pub fn verify_identity_suite(n: usize) -> Result<IdentityReport, SpinError> {
    if n > MAX_IDENTITY_RANK {
        return Err(SpinError::SizeLimit { n, limit: MAX_IDENTITY_RANK });
    }
    let mut rep = IdentityReport::new(n);
    if n < 2 {
        return Ok(rep);
    }
    let one = SpinElement::one(n);
    let zero = SpinElement::zero(n);
    let tau = |i: usize, j: usize| transposition_element(i, j, n);

    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let t = tau(i, j)?;
            rep.record("tau_ij^2 = 1", &[i, j], &t.mul(&t)?, &one)?;
            if i < j {
                rep.record("tau_ji = -tau_ij", &[i, j], &tau(j, i)?, &t.neg())?;
            }
            for k in 1..=n {
                if k == i || k == j {
                    continue;
                }
                let u = tau(j, k)?;
                rep.record("tau_ij tau_jk tau_ij = -tau_ik", &[i, j, k], &t.mul(&u)?.mul(&t)?, &tau(i, k)?.neg())?;
                rep.record("tau_jk tau_ij tau_jk = -tau_ik", &[i, j, k], &u.mul(&t)?.mul(&u)?, &tau(i, k)?.neg())?;
                for l in k + 1..=n {
                    if l == i || l == j || i > j {
                        continue;
                    }
                    let v = tau(k, l)?;
                    rep.record("tau_ij tau_kl = -tau_kl tau_ij", &[i, j, k, l], &t.mul(&v)?, &v.mul(&t)?.neg())?;
                }
            }
        }
    }
    // The printed middle term of the triple relation reads -tau_ij; record
    // whether that form holds anywhere.
    if n >= 3 {
        let (t, u) = (tau(1, 2)?, tau(2, 3)?);
        let holds = t.mul(&u)?.mul(&t)? == t.neg();
        rep.notes.push(format!("tau_12 tau_23 tau_12 = -tau_12 holds: {holds}; the identity holds with -tau_13"));
    }

    let pi: Vec<SpinElement> = (0..=n).map(|k| if k == 0 { Ok(zero.clone()) } else { jm_element(k, n) }).collect::<Result<_, _>>()?;
    let sq: Vec<SpinElement> = pi.iter().map(|p| p.mul(p)).collect::<Result<_, _>>()?;

    for i in 1..=n {
        for j in i + 1..=n {
            rep.record("pi_i pi_j + pi_j pi_i = 0", &[i, j], &pi[i].mul(&pi[j])?.add(&pi[j].mul(&pi[i])?)?, &zero)?;
        }
    }

    // pi_i^2 = (i - 1) + sign * sum_{k != l < i} tau_kl tau_li
    let mut minus_ok = true;
    let mut plus_ok = true;
    for i in 1..=n {
        let mut s = zero.clone();
        for k in 1..i {
            for l in 1..i {
                if k != l {
                    s = s.add(&cycle_product(&[k, l, i], n)?)?;
                }
            }
        }
        let base = int(n, i as i64 - 1);
        minus_ok &= sq[i] == base.sub(&s)?;
        plus_ok &= sq[i] == base.add(&s)?;
        let rhs = if plus_ok && !minus_ok { base.add(&s)? } else { base.sub(&s)? };
        let name = if plus_ok && !minus_ok {
            "pi_i^2 = i - 1 + sum tau_kl tau_li"
        } else {
            "pi_i^2 = i - 1 - sum tau_kl tau_li"
        };
        rep.record(name, &[i], &sq[i], &rhs)?;
    }
    rep.notes.push(format!(
        "pi_i^2 expansion: minus-sign form holds: {minus_ok}; plus-sign form holds: {plus_ok}"
    ));

    for i in 1..n {
        let t = SpinElement::generator(i, n)?;
        let (p, q) = (&pi[i], &pi[i + 1]);
        let (p2, q2) = (&sq[i], &sq[i + 1]);
        let d = p.sub(q)?;
        let d2 = p2.sub(q2)?;
        let f = t.mul(&d2)?.add(&q.sub(p)?)?;
        let idx = [i];
        rep.record("tau_i pi_i + pi_{i+1} tau_i = 1", &idx, &t.mul(p)?.add(&q.mul(&t)?)?, &one)?;
        rep.record("(pi_i - pi_{i+1}) tau_i = tau_i (pi_i - pi_{i+1})", &idx, &d.mul(&t)?, &t.mul(&d)?)?;
        rep.record(
            "(pi_i^2 - pi_{i+1}^2) tau_i + tau_i (pi_i^2 - pi_{i+1}^2) = 2 (pi_i - pi_{i+1})",
            &idx,
            &d2.mul(&t)?.add(&t.mul(&d2)?)?,
            &d.add(&d)?,
        )?;
        rep.record("F_i pi_i + pi_{i+1} F_i = 0", &idx, &f.mul(p)?.add(&q.mul(&f)?)?, &zero)?;
        rep.record("F_i pi_{i+1} + pi_i F_i = 0", &idx, &f.mul(q)?.add(&p.mul(&f)?)?, &zero)?;
        rep.record(
            "F_i^2 = pi_i^2 + pi_{i+1}^2 - (pi_i^2 - pi_{i+1}^2)^2",
            &idx,
            &f.mul(&f)?,
            &p2.add(q2)?.sub(&d2.mul(&d2)?)?,
        )?;
    }
    Ok(rep)
}

/// Check the presentation of the even part by `y_i = tau_i tau_{i+1}`.
pub fn even_presentation_check(n: usize) -> Result<IdentityReport, SpinError> {
    if n > MAX_IDENTITY_RANK {
        return Err(SpinError::SizeLimit { n, limit: MAX_IDENTITY_RANK });
    }
    let mut rep = IdentityReport::new(n);
    if n < 3 {
        return Ok(rep);
    }
    let one = SpinElement::one(n);
    let y: Vec<SpinElement> = (1..=n - 2).map(|i| SpinElement::from_word(&[i, i + 1], n)).collect::<Result<_, _>>()?;
    let y_inv: Vec<SpinElement> = (1..=n - 2).map(|i| SpinElement::from_word(&[i + 1, i], n)).collect::<Result<_, _>>()?;
    let g = y.len();
    for i in 0..g {
        rep.record("y_i y_i^-1 = 1", &[i + 1], &y[i].mul(&y_inv[i])?, &one)?;
        rep.record("y_i^3 = 1", &[i + 1], &y[i].pow(3)?, &one)?;
        if i + 1 < g {
            let yy = y[i].mul(&y[i + 1])?;
            rep.record("(y_i y_{i+1})^2 = -1", &[i + 1], &yy.mul(&yy)?, &one.neg())?;
        }
        for j in i + 3..g {
            rep.record("y_i y_j = y_j y_i", &[i + 1, j + 1], &y[i].mul(&y[j])?, &y[j].mul(&y[i])?)?;
        }
        if i + 2 < g {
            rep.record(
                "y_i y_{i+1}^-1 y_{i+2} = -y_{i+2} y_i",
                &[i + 1],
                &y[i].mul(&y_inv[i + 1])?.mul(&y[i + 2])?,
                &y[i + 2].mul(&y[i])?.neg(),
            )?;
        }
    }
    let closure = subalgebra_closure(&y, n)?;
    let even_dim = (1..=n).product::<usize>() / 2;
    let generates = closure.len() == even_dim;
    rep.all_pass &= generates;
    rep.notes.push(format!("y_i generate a subalgebra of dimension {} (even part has dimension {even_dim})", closure.len()));
    Ok(rep)
}
