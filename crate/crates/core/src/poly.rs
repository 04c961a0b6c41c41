//! Univariate polynomials over [`SqrtNumber`] and exact root finding for the
//! spectra that occur here: rational roots plus at most quadratic irrational
//! pairs with a rational discriminant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::SqrtNumber;

/// Coefficients from the constant term upward; trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<SqrtNumber>);

impl Poly {
    pub fn new(mut coeffs: Vec<SqrtNumber>) -> Self {
        while coeffs.last().is_some_and(SqrtNumber::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &SqrtNumber) -> SqrtNumber {
        self.0.iter().rev().fold(SqrtNumber::zero(), |acc, c| &(&acc * x) + c)
    }

    fn rational_coeffs(&self) -> Option<Vec<BigRational>> {
        self.0.iter().map(SqrtNumber::to_rational).collect()
    }

    /// All roots in the multi-quadratic field, when the polynomial splits
    /// into linear factors over it using rational roots and quadratic
    /// factors with rational discriminant. `None` otherwise.
    pub fn roots(&self) -> Option<Vec<SqrtNumber>> {
        let deg = self.degree()?;
        if deg == 0 {
            return Some(Vec::new());
        }
        if deg == 1 {
            let r = -&self.0[0].checked_div(&self.0[1]).ok()?;
            return Some(vec![r]);
        }
        let mut coeffs = self.rational_coeffs()?;
        let mut roots = Vec::new();
        for _ in 0..deg {
            if coeffs.len() <= 3 {
                break;
            }
            let r = find_rational_root(&coeffs)?;
            coeffs = deflate(&coeffs, &r);
            roots.push(SqrtNumber::from_rational(r));
        }
        match coeffs.len() {
            2 => roots.push(SqrtNumber::from_rational(-&coeffs[0] / &coeffs[1])),
            3 => {
                let (c, b, a) = (&coeffs[0], &coeffs[1], &coeffs[2]);
                let disc = b * b - BigRational::from_integer(4.into()) * a * c;
                let s = SqrtNumber::sqrt_rational(&disc).ok()?;
                let two_a = SqrtNumber::from_rational(a * BigRational::from_integer(2.into()));
                let inv = two_a.inverse().ok()?;
                let mb = SqrtNumber::from_rational(-b);
                roots.push(&(&mb - &s) * &inv);
                roots.push(&(&mb + &s) * &inv);
            }
            _ => {}
        }
        Some(roots)
    }
}

fn eval_rational(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Divide by `(x - r)`, assuming `r` is a root.
fn deflate(coeffs: &[BigRational], r: &BigRational) -> Vec<BigRational> {
    let n = coeffs.len() - 1;
    let mut out = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for k in (0..n).rev() {
        carry = &coeffs[k + 1] + &carry * r;
        out[k] = carry.clone();
    }
    out
}

/// Locate one rational root by floating-point approximation followed by
/// continued-fraction recognition and exact verification.
fn find_rational_root(coeffs: &[BigRational]) -> Option<BigRational> {
    if coeffs[0].is_zero() {
        return Some(BigRational::zero());
    }
    // Denominators of rational roots divide the leading coefficient of the
    // primitive integer polynomial.
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let lead = ints.last().expect("nonempty").abs();
    for approx in approximate_real_roots(coeffs) {
        for cand in convergents(approx, &lead) {
            if eval_rational(coeffs, &cand).is_zero() {
                return Some(cand);
            }
        }
    }
    // Small exhaustive fallback over integer-over-divisor candidates.
    let c0 = ints[0].abs();
    let bound = c0.to_i64().unwrap_or(i64::MAX).min(256);
    let lead_small = lead.to_i64().unwrap_or(1).clamp(1, 64);
    for q in 1..=lead_small {
        if (&lead % BigInt::from(q)).is_zero() {
            for p in 0..=bound.saturating_mul(q) {
                for s in [p, -p] {
                    let cand = BigRational::new(BigInt::from(s), BigInt::from(q));
                    if eval_rational(coeffs, &cand).is_zero() {
                        return Some(cand);
                    }
                }
            }
        }
    }
    None
}

fn convergents(x: f64, max_den: &BigInt) -> Vec<BigRational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let rounded = x.round();
    out.push(BigRational::from_integer(BigInt::from(rounded as i64)));
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut frac = x;
    for _ in 0..40 {
        let a = frac.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2.is_zero() || &k2 > max_den {
            break;
        }
        out.push(BigRational::new(h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let rem = frac - a;
        if rem.abs() < 1e-12 {
            break;
        }
        frac = 1.0 / rem;
    }
    out
}

/// Real parts of all complex roots (Durand-Kerner iteration in `f64`),
/// sorted by distance from the real axis.
fn approximate_real_roots(coeffs: &[BigRational]) -> Vec<f64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].to_f64().unwrap_or(1.0);
    let a: Vec<f64> = coeffs.iter().map(|c| c.to_f64().unwrap_or(0.0) / lead).collect();
    let radius = 1.0 + a[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            (radius * t.cos(), radius * t.sin())
        })
        .collect();
    let mul = |x: (f64, f64), y: (f64, f64)| (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
    let div = |x: (f64, f64), y: (f64, f64)| {
        let d = y.0 * y.0 + y.1 * y.1;
        ((x.0 * y.0 + x.1 * y.1) / d, (x.1 * y.0 - x.0 * y.1) / d)
    };
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut p = (1.0, 0.0);
            for k in (0..n).rev() {
                p = mul(p, z[i]);
                p.0 += a[k];
            }
            let mut q = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    q = mul(q, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            if q.0 == 0.0 && q.1 == 0.0 {
                q = (1e-12, 0.0);
            }
            let step = div(p, q);
            z[i] = (z[i].0 - step.0, z[i].1 - step.1);
            delta = delta.max(step.0.abs() + step.1.abs());
        }
        if delta < 1e-14 * radius {
            break;
        }
    }
    z.sort_by(|x, y| x.1.abs().partial_cmp(&y.1.abs()).unwrap_or(std::cmp::Ordering::Equal));
    z.into_iter().map(|c| c.0).collect()
}
