//! Exact arithmetic in real multi-quadratic fields `Q(sqrt(d1), ..., sqrt(dk))`.
//!
//! A [`SqrtNumber`] is a finite rational combination of square roots of
//! square-free positive integers. Radicand `1` carries the rational part, so
//! arithmetic never special-cases it. Because the square roots of distinct
//! square-free integers are linearly independent over the rationals, the
//! sorted term list is a canonical form and structural equality is value
//! equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Failures of the exact scalar layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("square root of a negative rational ({0})")]
    NegativeRadicand(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand {0} does not fit in 64 bits")]
    RadicandOverflow(String),
    #[error("invalid SqrtNumber encoding: {0}")]
    Encoding(String),
}

/// Sign of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    fn of_rational(q: &BigRational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// An element of a real multi-quadratic field, stored as `sum q_d * sqrt(d)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SqrtNumber {
    /// Strictly ascending square-free radicands with nonzero coefficients.
    terms: Vec<(u64, BigRational)>,
}

/// Split `n = s^2 * d` with `d` square-free.
pub fn square_free_decompose(mut n: u64) -> (u64, u64) {
    assert!(n > 0, "square_free_decompose(0)");
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (square, free * n)
}

/// Whether `n` has no repeated prime factor.
pub fn is_square_free(n: u64) -> bool {
    n > 0 && square_free_decompose(n).0 == 1
}

fn largest_prime_factor(mut n: u64) -> u64 {
    let mut largest = 1;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        while n % p == 0 {
            largest = p;
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        largest = largest.max(n);
    }
    largest
}

/// `sqrt(a) * sqrt(b) = g * sqrt((a/g) * (b/g))` for square-free `a`, `b`.
fn radicand_product(a: u64, b: u64) -> (u64, u64) {
    let g = a.gcd(&b);
    let r = (a / g) as u128 * (b / g) as u128;
    let r = u64::try_from(r).unwrap_or_else(|_| panic!("radicand product {a}*{b} overflows u64"));
    (g, r)
}

fn max_interval_bits() -> u32 {
    static CAP: OnceLock<u32> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("SUPERSPIN_MAX_BITS")
            .ok()
            .and_then(|v| v.trim().parse::<u32>().ok())
            .filter(|&b| b >= 64)
            .unwrap_or(1 << 14)
    })
}

impl SqrtNumber {
    pub fn zero() -> Self {
        SqrtNumber { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            SqrtNumber { terms: vec![(1, q)] }
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The rational `num/den`. Panics when `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Build from arbitrary `(radicand, coefficient)` pairs. Radicands need not
    /// be square-free; square factors are pulled into the coefficient.
    pub fn from_terms<I>(terms: I) -> Result<Self, ExactError>
    where
        I: IntoIterator<Item = (u64, BigRational)>,
    {
        let mut acc: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (d, q) in terms {
            if d == 0 {
                continue;
            }
            let (s, free) = square_free_decompose(d);
            let entry = acc.entry(free).or_insert_with(BigRational::zero);
            *entry += q * BigRational::from_integer(BigInt::from(s));
        }
        Ok(Self::from_map(acc))
    }

    fn from_map(map: BTreeMap<u64, BigRational>) -> Self {
        SqrtNumber { terms: map.into_iter().filter(|(_, q)| !q.is_zero()).collect() }
    }

    /// `q * sqrt(d)` for square-free `d`.
    pub fn term(d: u64, q: BigRational) -> Self {
        debug_assert!(is_square_free(d));
        if q.is_zero() {
            Self::zero()
        } else {
            SqrtNumber { terms: vec![(d, q)] }
        }
    }

    /// Exact square root of a nonnegative rational.
    pub fn sqrt_rational(q: &BigRational) -> Result<Self, ExactError> {
        if q.is_negative() {
            return Err(ExactError::NegativeRadicand(q.to_string()));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        let to_u64 = |x: &BigInt| x.to_u64().ok_or_else(|| ExactError::RadicandOverflow(x.to_string()));
        let (s1, d1) = square_free_decompose(to_u64(q.numer())?);
        let (s2, d2) = square_free_decompose(to_u64(q.denom())?);
        // sqrt(s1^2 d1 / (s2^2 d2)) = s1 sqrt(d1 d2) / (s2 d2)
        let (g, d) = radicand_product(d1, d2);
        let coeff = BigRational::new(BigInt::from(s1) * BigInt::from(g), BigInt::from(s2) * BigInt::from(d2));
        Ok(Self::term(d, coeff))
    }

    /// Square root of a nonnegative integer.
    pub fn sqrt_u64(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let (s, d) = square_free_decompose(n);
        Self::term(d, BigRational::from_integer(BigInt::from(s)))
    }

    pub fn terms(&self) -> &[(u64, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 1 && self.terms[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == 1)
    }

    /// The value as a rational, when it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(1, q)] => Some(q.clone()),
            _ => None,
        }
    }

    /// Re-run normalization on the stored terms. A no-op for every value the
    /// public API can produce.
    pub fn normalized(&self) -> Self {
        Self::from_terms(self.terms.iter().cloned()).expect("stored radicands are positive")
    }

    /// Whether the stored representation satisfies every invariant.
    pub fn is_normalized(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0 < w[1].0)
            && self.terms.iter().all(|(d, q)| is_square_free(*d) && !q.is_zero())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        SqrtNumber { terms: self.terms.iter().map(|(d, c)| (*d, c * q)).collect() }
    }

    /// Apply the Galois automorphism flipping `sqrt(p)` for the prime `p`.
    pub fn conjugate_at(&self, p: u64) -> Self {
        SqrtNumber {
            terms: self
                .terms
                .iter()
                .map(|(d, c)| if d % p == 0 { (*d, -c) } else { (*d, c.clone()) })
                .collect(),
        }
    }

    fn largest_prime(&self) -> Option<u64> {
        self.terms.iter().filter(|(d, _)| *d > 1).map(|(d, _)| largest_prime_factor(*d)).max()
    }

    /// Multiplicative inverse, obtained by multiplying through by Galois
    /// conjugates until the denominator is rational.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(self.inverse_nonzero())
    }

    fn inverse_nonzero(&self) -> Self {
        match self.largest_prime() {
            None => {
                let q = &self.terms[0].1;
                Self::from_rational(q.recip())
            }
            Some(p) => {
                let conj = self.conjugate_at(p);
                let reduced = self * &conj;
                &conj * &reduced.inverse_nonzero()
            }
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self * &other.inverse()?)
    }

    /// Sign of the real value by interval refinement, starting at 64 bits of
    /// precision and doubling. Past the `SUPERSPIN_MAX_BITS` cap the decision
    /// falls back to [`SqrtNumber::sign_exact`].
    pub fn sign(&self) -> Sign {
        self.sign_with_cap(max_interval_bits())
    }

    pub fn sign_with_cap(&self, max_bits: u32) -> Sign {
        if let Some(q) = self.to_rational() {
            return Sign::of_rational(&q);
        }
        let mut bits = 64u32;
        while bits <= max_bits {
            if let Some(s) = self.interval_sign(bits) {
                return s;
            }
            bits = bits.saturating_mul(2);
        }
        self.sign_exact()
    }

    /// Interval evaluation with `bits` fractional bits; `None` when the
    /// interval still straddles zero.
    pub fn interval_sign(&self, bits: u32) -> Option<Sign> {
        let denom_lcm = self.terms.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
        let scale = BigUint::one() << (2 * bits as usize);
        let mut lower = BigInt::zero();
        let mut upper = BigInt::zero();
        for (d, q) in &self.terms {
            let a = q.numer() * (&denom_lcm / q.denom());
            let (lo, hi) = if *d == 1 {
                let exact = BigInt::one() << bits as usize;
                (exact.clone(), exact)
            } else {
                let m = BigInt::from((BigUint::from(*d) * &scale).sqrt());
                let m1 = &m + 1;
                (m, m1)
            };
            if a.is_positive() {
                lower += &a * &lo;
                upper += &a * &hi;
            } else {
                lower += &a * &hi;
                upper += &a * &lo;
            }
        }
        if lower.is_positive() {
            Some(Sign::Positive)
        } else if upper.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    /// Sign decided purely algebraically: write `x = u + w*sqrt(p)` for the
    /// largest prime `p` present and compare `u^2` with `p*w^2`.
    pub fn sign_exact(&self) -> Sign {
        let Some(p) = self.largest_prime() else {
            return self.terms.first().map_or(Sign::Zero, |(_, q)| Sign::of_rational(q));
        };
        let mut u = Vec::new();
        let mut w = Vec::new();
        for (d, q) in &self.terms {
            if d % p == 0 {
                w.push((d / p, q.clone()));
            } else {
                u.push((*d, q.clone()));
            }
        }
        let u = SqrtNumber { terms: u };
        let w = SqrtNumber { terms: w };
        let su = u.sign_exact();
        let sw = w.sign_exact();
        if su == Sign::Zero {
            return sw;
        }
        if sw == Sign::Zero || su == sw {
            return su;
        }
        let p_rat = Self::from_integer(p as i64);
        let diff = &(&u * &u) - &(&(&w * &w) * &p_rat);
        let s = diff.sign_exact();
        if su == Sign::Positive {
            s
        } else {
            s.flip()
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Sign::Negative {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, q)| q.to_f64().unwrap_or(f64::NAN) * (*d as f64).sqrt())
            .sum()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let take_b = |c: &BigRational| if negate_other { -c } else { c.clone() };
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                (None, _) => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, take_b(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SqrtNumber { terms: out }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let [(1, q)] = self.terms.as_slice() {
            return other.scale(q);
        }
        if let [(1, q)] = other.terms.as_slice() {
            return self.scale(q);
        }
        let mut acc: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (da, qa) in &self.terms {
            for (db, qb) in &other.terms {
                let (g, d) = radicand_product(*da, *db);
                let c = qa * qb * BigRational::from_integer(BigInt::from(g));
                *acc.entry(d).or_insert_with(BigRational::zero) += c;
            }
        }
        Self::from_map(acc)
    }
}

impl From<i64> for SqrtNumber {
    fn from(n: i64) -> Self {
        SqrtNumber::from_integer(n)
    }
}

impl From<BigRational> for SqrtNumber {
    fn from(q: BigRational) -> Self {
        SqrtNumber::from_rational(q)
    }
}

impl<'a> Add<&'a SqrtNumber> for &'a SqrtNumber {
    type Output = SqrtNumber;
    fn add(self, rhs: &SqrtNumber) -> SqrtNumber {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a SqrtNumber> for &'a SqrtNumber {
    type Output = SqrtNumber;
    fn sub(self, rhs: &SqrtNumber) -> SqrtNumber {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a SqrtNumber> for &'a SqrtNumber {
    type Output = SqrtNumber;
    fn mul(self, rhs: &SqrtNumber) -> SqrtNumber {
        self.mul_impl(rhs)
    }
}

impl Add for SqrtNumber {
    type Output = SqrtNumber;
    fn add(self, rhs: SqrtNumber) -> SqrtNumber {
        self.add_impl(&rhs, false)
    }
}

impl Sub for SqrtNumber {
    type Output = SqrtNumber;
    fn sub(self, rhs: SqrtNumber) -> SqrtNumber {
        self.add_impl(&rhs, true)
    }
}

impl Mul for SqrtNumber {
    type Output = SqrtNumber;
    fn mul(self, rhs: SqrtNumber) -> SqrtNumber {
        self.mul_impl(&rhs)
    }
}

impl Neg for &SqrtNumber {
    type Output = SqrtNumber;
    fn neg(self) -> SqrtNumber {
        SqrtNumber { terms: self.terms.iter().map(|(d, q)| (*d, -q)).collect() }
    }
}

impl Neg for SqrtNumber {
    type Output = SqrtNumber;
    fn neg(mut self) -> SqrtNumber {
        for (_, q) in &mut self.terms {
            *q = -std::mem::take(q);
        }
        self
    }
}

impl AddAssign<&SqrtNumber> for SqrtNumber {
    fn add_assign(&mut self, rhs: &SqrtNumber) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&SqrtNumber> for SqrtNumber {
    fn sub_assign(&mut self, rhs: &SqrtNumber) {
        *self = self.add_impl(rhs, true);
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for SqrtNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            let mag = q.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (*d, mag.is_one()) {
                (1, _) => write!(f, "{}", fmt_rational(&mag))?,
                (d, true) => write!(f, "sqrt({d})")?,
                (d, false) => write!(f, "{}*sqrt({d})", fmt_rational(&mag))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SqrtNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SqrtNumber({self})")
    }
}

/// Parse `"p"` or `"p/q"` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let bad = || ExactError::Encoding(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Render a rational as `"p/q"` (or `"p"` for integers).
pub fn rational_string(q: &BigRational) -> String {
    fmt_rational(q)
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    radicand: u64,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SqrtRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for SqrtNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SqrtRepr {
            terms: self
                .terms
                .iter()
                .map(|(d, q)| TermRepr { radicand: *d, coeff: fmt_rational(q) })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SqrtNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SqrtRepr::deserialize(deserializer)?;
        SqrtNumber::try_from_repr(repr).map_err(serde::de::Error::custom)
    }
}

impl SqrtNumber {
    fn try_from_repr(repr: SqrtRepr) -> Result<Self, ExactError> {
        let mut terms = Vec::with_capacity(repr.terms.len());
        let mut last = 0u64;
        for t in repr.terms {
            if !is_square_free(t.radicand) {
                return Err(ExactError::Encoding(format!("radicand {} is not square-free", t.radicand)));
            }
            if t.radicand <= last {
                return Err(ExactError::Encoding("radicands must be strictly ascending".into()));
            }
            last = t.radicand;
            let q = parse_rational(&t.coeff)?;
            if q.is_zero() {
                return Err(ExactError::Encoding("zero coefficients are not stored".into()));
            }
            terms.push((t.radicand, q));
        }
        Ok(SqrtNumber { terms })
    }
}
