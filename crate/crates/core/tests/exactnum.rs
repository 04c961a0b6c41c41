use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use superspin::exactnum::{parse_rational, square_free_decompose, ExactError, Sign, SqrtNumber};
use superspin::linalg::{kernel, rank, SparseMatrix, SparseVec};
use superspin::poly::Poly;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn r(n: i64, d: i64) -> SqrtNumber {
    SqrtNumber::from_ratio(n, d)
}

fn s(d: u64) -> SqrtNumber {
    SqrtNumber::sqrt_u64(d)
}

#[test]
fn sqrt_of_rationals() {
    let two = SqrtNumber::sqrt_rational(&q(2, 1)).unwrap();
    assert_eq!(two.terms(), &[(2, q(1, 1))]);
    let three_halves = SqrtNumber::sqrt_rational(&q(9, 4)).unwrap();
    assert_eq!(three_halves.terms(), &[(1, q(3, 2))]);
    assert_eq!(SqrtNumber::sqrt_rational(&q(8, 1)).unwrap(), SqrtNumber::term(2, q(2, 1)));
    assert_eq!(SqrtNumber::sqrt_rational(&q(1, 2)).unwrap(), SqrtNumber::term(2, q(1, 2)));
    assert!(matches!(SqrtNumber::sqrt_rational(&q(-1, 1)), Err(ExactError::NegativeRadicand(_))));
}

#[test]
fn products() {
    assert_eq!(&s(2) * &s(2), SqrtNumber::from_integer(2));
    assert_eq!(&s(2) * &s(3), s(6));
    let a = &SqrtNumber::one() + &s(2);
    let b = &r(-1, 1) + &s(2);
    assert!((&a * &b).is_one());
    assert_eq!(&s(6) * &s(10), SqrtNumber::term(15, q(2, 1)));
}

#[test]
fn inverses() {
    let a = &SqrtNumber::one() + &s(2);
    assert_eq!(a.inverse().unwrap(), &r(-1, 1) + &s(2));
    assert_eq!(r(3, 2).inverse().unwrap(), r(2, 3));
    assert_eq!(s(6).inverse().unwrap(), SqrtNumber::term(6, q(1, 6)));
    assert_eq!(SqrtNumber::zero().inverse(), Err(ExactError::DivisionByZero));
    let x = &(&s(2) + &s(3)) + &s(5);
    assert!((&x * &x.inverse().unwrap()).is_one());
}

#[test]
fn signs() {
    assert_eq!((&s(2) - &r(3, 2)).sign(), Sign::Negative);
    assert_eq!(SqrtNumber::zero().sign(), Sign::Zero);
    assert_eq!((&s(6) - &r(2, 1)).sign(), Sign::Positive);
    // sqrt2 + sqrt3 - sqrt10 is about -0.0160.
    assert_eq!((&(&s(2) + &s(3)) - &s(10)).sign(), Sign::Negative);
    // A nearly cancelling value decided exactly: 99 - 70 sqrt2 is about 0.00505.
    let tiny = &r(99, 1) - &SqrtNumber::term(2, q(70, 1));
    assert_eq!(tiny.sign(), Sign::Positive);
    assert_eq!(tiny.sign_exact(), Sign::Positive);
    assert_eq!(tiny.sign_with_cap(64), Sign::Positive);
    assert_eq!((-&tiny).sign_exact(), Sign::Negative);
}

#[test]
fn square_free_parts() {
    assert_eq!(square_free_decompose(72), (6, 2));
    assert_eq!(square_free_decompose(1), (1, 1));
    assert_eq!(square_free_decompose(45), (3, 5));
}

#[test]
fn serde_roundtrip() {
    let x = &(&r(-3, 7) + &s(2)) + &SqrtNumber::term(15, q(5, 3));
    let text = serde_json::to_string(&x).unwrap();
    let back: SqrtNumber = serde_json::from_str(&text).unwrap();
    assert_eq!(x, back);
    assert!(serde_json::from_str::<SqrtNumber>(r#"{"terms":[{"coeff":"1","radicand":4}]}"#).is_err());
    assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
}

#[test]
fn display_and_float() {
    let x = &r(1, 2) + &s(2);
    assert!((x.to_f64() - (0.5 + 2f64.sqrt())).abs() < 1e-12);
    assert!(!x.to_string().is_empty());
    assert_eq!(x.pow(2), &r(9, 4) + &s(2));
}

#[test]
fn rank_and_kernel() {
    let rows: Vec<SparseVec> = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
        .iter()
        .map(|row| SparseVec::from_entries(row.iter().enumerate().map(|(i, &x)| (i, SqrtNumber::from_integer(x)))))
        .collect();
    assert_eq!(rank(&rows, 3), 2);
    let ker = kernel(&rows, 3);
    assert_eq!(ker.len(), 1);
    for row in &rows {
        assert!(row.dot(&ker[0]).is_zero());
    }
}

#[test]
fn matrix_algebra() {
    let a = SparseMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
    assert!(a.mul(&a).is_identity());
    let k = a.kron(&SparseMatrix::identity(2));
    assert_eq!(k.nrows(), 4);
    assert_eq!(k.trace(), SqrtNumber::zero());
    assert_eq!(a.direct_sum(&a).nnz(), 4);
}

#[test]
fn polynomial_roots() {
    // (x - sqrt2)(x + sqrt2)(x - 1) = x^3 - x^2 - 2x + 2
    let p = Poly::new(vec![r(2, 1), r(-2, 1), r(-1, 1), r(1, 1)]);
    let mut roots = p.roots().unwrap();
    roots.sort_by(|a, b| a.cmp_value(b));
    assert_eq!(roots, vec![-&s(2), SqrtNumber::one(), s(2)]);
    assert!(p.eval(&s(2)).is_zero());
}

const RADICANDS: [u64; 8] = [1, 2, 3, 5, 6, 7, 10, 15];

fn arb_number() -> impl Strategy<Value = SqrtNumber> {
    prop::collection::vec((prop::sample::select(RADICANDS.to_vec()), -40i64..=40, 1i64..=12), 0..4).prop_map(|ts| {
        let mut x = SqrtNumber::zero();
        for (d, n, den) in ts {
            x += &SqrtNumber::term(d, q(n, den));
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(x in arb_number(), y in arb_number(), z in arb_number()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x - &x).is_zero());
        prop_assert!((&x * &y).is_normalized());
    }

    #[test]
    fn inverse_roundtrip(x in arb_number()) {
        prop_assume!(!x.is_zero());
        let inv = x.inverse().unwrap();
        prop_assert!((&x * &inv).is_one());
        prop_assert_eq!(inv.inverse().unwrap(), x);
    }

    #[test]
    fn sign_matches_square_comparison(
        d in prop::sample::select(RADICANDS.to_vec()),
        f in prop::sample::select(RADICANDS.to_vec()),
        c in 1i64..60,
        e in 1i64..60,
    ) {
        // c sqrt d - e sqrt f has the sign of c^2 d - e^2 f.
        let v = &SqrtNumber::term(d, q(c, 1)) - &SqrtNumber::term(f, q(e, 1));
        let diff = c * c * d as i64 - e * e * f as i64;
        let expected = match diff.signum() { 1 => Sign::Positive, -1 => Sign::Negative, _ => Sign::Zero };
        prop_assert_eq!(v.sign(), expected);
        prop_assert_eq!(v.sign_exact(), expected);
    }

    #[test]
    fn sign_is_consistent_with_float(x in arb_number()) {
        let f = x.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.sign(), if f > 0.0 { Sign::Positive } else { Sign::Negative });
        }
        prop_assert_eq!((-&x).sign(), match x.sign() {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
        });
    }
}
