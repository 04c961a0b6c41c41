use proptest::prelude::*;
use superspin::exactnum::SqrtNumber;
use superspin::spinalg::{
    canonical_form, canonical_word, cycle_sum, even_presentation_check, graded_centralizer, gz_algebras, jm_element,
    lehmer_code, perm_rank, perm_unrank, same_span, span_contains, supercenter_basis, supercentralizer,
    transposition_element, verify_identity_suite, SpinElement, SpinError, SpinTable,
};

fn gen(i: usize, n: usize) -> SpinElement {
    SpinElement::generator(i, n).unwrap()
}

fn one(n: usize) -> SpinElement {
    SpinElement::one(n)
}

#[test]
fn canonical_forms() {
    let w = canonical_form(&[1, 1], 2).unwrap();
    assert_eq!((w.sign, w.perm.clone()), (1, vec![1, 2]));
    let a = canonical_form(&[1, 3], 4).unwrap();
    let b = canonical_form(&[3, 1], 4).unwrap();
    assert_eq!(a.perm, b.perm);
    assert_eq!(a.sign, -b.sign);
    assert!(canonical_form(&[4], 4).is_err());
}

#[test]
fn permutation_indexing() {
    assert_eq!(perm_rank(&[0, 1, 2]), 0);
    assert_eq!(lehmer_code(&[2, 0, 1]), vec![2, 0, 0]);
    for r in 0..24 {
        assert_eq!(perm_rank(&perm_unrank(r, 4)), r);
    }
    let t = SpinTable::get(4).unwrap();
    assert_eq!(t.size(), 24);
    for idx in 0..24 {
        assert_eq!(t.word(idx), canonical_word(t.perm(idx)).as_slice());
        assert_eq!(t.length(idx), t.word(idx).len());
    }
}

#[test]
fn products_of_generators() {
    let t1 = gen(1, 3);
    assert_eq!(t1.mul(&t1).unwrap(), one(3));
    let t2 = gen(2, 3);
    let lhs = t1.add(&t2).unwrap().mul(&t1.sub(&t2).unwrap()).unwrap();
    let rhs = t2.mul(&t1).unwrap().sub(&t1.mul(&t2).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    let y = t1.mul(&t2).unwrap();
    assert_eq!(y.pow(3).unwrap(), one(3));
    let far = gen(1, 4).mul(&gen(3, 4)).unwrap();
    assert_eq!(far.mul(&far).unwrap(), one(4).neg());
}

#[test]
fn transpositions() {
    assert_eq!(transposition_element(1, 2, 3).unwrap(), gen(1, 3));
    let t13 = transposition_element(1, 3, 3).unwrap();
    assert_eq!(t13.mul(&t13).unwrap(), one(3));
    let a = transposition_element(1, 2, 4).unwrap();
    let b = transposition_element(3, 4, 4).unwrap();
    assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap().neg());
    assert_eq!(transposition_element(2, 2, 3), Err(SpinError::EqualIndices(2)));
    assert_eq!(t13.parity(), Some(1));
}

#[test]
fn jucys_murphy_elements() {
    for n in 1..=4 {
        assert!(jm_element(1, n).unwrap().is_zero());
    }
    let p2 = jm_element(2, 3).unwrap();
    assert_eq!(p2.mul(&p2).unwrap(), one(3));
    let (a, b) = (jm_element(2, 4).unwrap(), jm_element(4, 4).unwrap());
    assert!(a.mul(&b).unwrap().add(&b.mul(&a).unwrap()).unwrap().is_zero());
    let p3 = jm_element(3, 3).unwrap();
    assert_eq!(p3.mul(&p3).unwrap().parity(), Some(0));
}

#[test]
fn supercenter_dimensions() {
    assert_eq!(supercenter_basis(3).unwrap().len(), 2);
    assert_eq!(supercenter_basis(5).unwrap().len(), 3);
    assert_eq!(supercenter_basis(2).unwrap().len(), 1);
    assert!(cycle_sum(&[2, 1], 3).unwrap().is_zero());
    assert!(cycle_sum(&[4], 4).unwrap().is_zero());
    assert!(!cycle_sum(&[3], 3).unwrap().is_zero());
}

#[test]
fn supercentralizers() {
    let z = supercentralizer(2, 1).unwrap();
    assert!(same_span(&z, &[one(2), gen(1, 2)]));
    for (n, m) in [(3, 2), (4, 2), (4, 3)] {
        for x in supercentralizer(n, m).unwrap() {
            for i in 1..m {
                assert!(x.supercommutator(&gen(i, n)).unwrap().is_zero(), "n={n} m={m}");
            }
        }
    }
}

#[test]
fn identity_suites() {
    for n in 2..=5 {
        let r = verify_identity_suite(n).unwrap();
        assert!(r.all_pass, "n={n}: {:?}", r.failures().map(|f| &f.identity).collect::<Vec<_>>());
    }
    let r3 = verify_identity_suite(3).unwrap();
    assert!(r3.notes.iter().any(|s| s.contains("plus-sign form holds: false")));
}

#[test]
fn even_presentation() {
    for n in 3..=5 {
        assert!(even_presentation_check(n).unwrap().all_pass, "n={n}");
    }
    let y = |i: usize, n: usize| gen(i, n).mul(&gen(i + 1, n)).unwrap();
    assert_eq!(y(1, 3).pow(3).unwrap(), one(3));
    let yy = y(1, 4).mul(&y(2, 4)).unwrap();
    assert_eq!(yy.mul(&yy).unwrap(), one(4).neg());
    assert_eq!(y(1, 6).mul(&y(4, 6)).unwrap(), y(4, 6).mul(&y(1, 6)).unwrap());
}

#[test]
fn gelfand_tsetlin() {
    for n in 2..=4 {
        let r = gz_algebras(n).unwrap();
        assert!(r.all_pass(), "n={n}");
        assert!(span_contains(&r.gz_basis, &r.sz_basis));
        assert!(span_contains(&r.sgz_basis, &r.gz_basis));
    }
    assert_eq!(gz_algebras(3).unwrap().gz_basis.len(), 3);
}

#[test]
fn graded_centralizers_are_commutative() {
    let dims: Vec<usize> = (2..=5).map(|n| graded_centralizer(n, n - 1).unwrap()).inspect(|c| assert!(c.is_commutative)).map(|c| c.basis().len()).collect();
    assert_eq!(dims, vec![1, 3, 6, 7]);
}

#[test]
fn element_json_roundtrip() {
    let x = gen(1, 3).add(&gen(2, 3).scale(&SqrtNumber::sqrt_u64(2))).unwrap();
    let text = serde_json::to_string(&x).unwrap();
    assert!(text.contains("\"perm\":[2,1,3]"));
    let back: SpinElement = serde_json::from_str(&text).unwrap();
    assert_eq!(x, back);
}

fn arb_element(n: usize) -> impl Strategy<Value = SpinElement> {
    let size: usize = (1..=n).product();
    prop::collection::vec((0..size, -3i64..=3), 1..5).prop_map(move |terms| {
        let mut x = SpinElement::zero(n);
        for (idx, c) in terms {
            x = x.add(&SpinElement::basis(n, idx, 1).scale(&SqrtNumber::from_integer(c))).unwrap();
        }
        x
    })
}

fn arb_triple() -> impl Strategy<Value = (SpinElement, SpinElement, SpinElement)> {
    (2usize..=5).prop_flat_map(|n| (arb_element(n), arb_element(n), arb_element(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn multiplication_is_associative((a, b, c) in arb_triple()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn canonical_form_respects_relations(word in prop::collection::vec(1usize..5, 0..10), i in 1usize..5) {
        // Inserting tau_i tau_i anywhere leaves the element unchanged.
        let n = 5;
        let base = canonical_form(&word, n).unwrap();
        let mut longer = word.clone();
        let at = word.len() / 2;
        longer.splice(at..at, [i, i]);
        let w = canonical_form(&longer, n).unwrap();
        prop_assert_eq!((w.sign, w.perm), (base.sign, base.perm));
    }
}
