use superspin::exactnum::SqrtNumber;
use superspin::gradedstruct::{
    adjoin_epsilon, classify_module, decompose_semisimple, direct_sum, even_part_centralizer_dim, graded_centralizer,
    graded_tensor, isotypic_type, m_standard, matrix_parity, q_standard, ungraded_block_count, BlockType, GradedError,
    GradedMatrixAlgebra, ModuleClass, NamedMatrix,
};
use superspin::linalg::SparseMatrix;
use superspin::seminormal::{regular_algebra, AlgebraTag};

fn regular(n: usize) -> GradedMatrixAlgebra {
    regular_algebra(AlgebraTag::Spin, n).unwrap()
}

#[test]
fn supercommutants_of_standard_modules() {
    let m = m_standard(1, 1).supercommutant().unwrap();
    assert_eq!(m.len(), 1);
    assert!(m[0].1.as_scalar().is_some());

    let q = q_standard(1).supercommutant().unwrap();
    assert_eq!(q.len(), 2);
    let (_, odd) = q.iter().find(|(p, _)| *p == 1).expect("odd element");
    assert!(odd.mul(odd).as_scalar().is_some_and(|c| !c.is_zero()));
}

#[test]
fn double_supercommutant_of_q1() {
    let a = q_standard(1);
    let sc = a.supercommutant().unwrap();
    let gens: Vec<NamedMatrix> = sc.iter().enumerate().map(|(k, (_, m))| NamedMatrix::new(format!("c{k}"), m.clone())).collect();
    let commutant = GradedMatrixAlgebra::new(a.parity().to_vec(), gens).unwrap();
    let double = commutant.supercommutant().unwrap();
    let original = a.span_closure();
    assert_eq!(double.len(), original.dim());
    let mut all = a.generators().to_vec();
    all.extend(double.iter().enumerate().map(|(k, (_, m))| NamedMatrix::new(format!("d{k}"), m.clone())));
    let joint = GradedMatrixAlgebra::new(a.parity().to_vec(), all).unwrap();
    assert_eq!(joint.span_closure().dim(), original.dim());
}

#[test]
fn module_classification() {
    assert_eq!(classify_module(&m_standard(2, 1)).unwrap(), ModuleClass::M { r: 2, s: 1 });
    assert_eq!(classify_module(&q_standard(2)).unwrap(), ModuleClass::Q { r: 2 });
    assert_eq!(classify_module(&m_standard(1, 1)).unwrap(), ModuleClass::M { r: 1, s: 1 });
    assert_eq!(classify_module(&q_standard(1)).unwrap(), ModuleClass::Q { r: 1 });
    let sum = direct_sum(&m_standard(1, 1), &m_standard(1, 1));
    assert_eq!(classify_module(&sum).unwrap(), ModuleClass::Reducible { supercommutant_dim: 4 });
    assert_eq!(isotypic_type(&sum).unwrap(), (BlockType::m(1, 1), 2));
}

#[test]
fn block_type_arithmetic() {
    assert_eq!(BlockType::m(1, 2), BlockType::M { r: 2, s: 1 });
    assert_eq!(BlockType::m(2, 2).algebra_dim(), 16);
    assert_eq!(BlockType::Q { r: 2 }.algebra_dim(), 8);
    assert_eq!(BlockType::Q { r: 2 }.part_dims(), (4, 4));
    assert_eq!(BlockType::from_part_dims(5, 4), Some(BlockType::m(2, 1)));
    assert_eq!(BlockType::from_part_dims(4, 4), Some(BlockType::Q { r: 2 }));
    assert_eq!(BlockType::from_part_dims(3, 2), None);
    assert_eq!(BlockType::m(2, 1).to_string(), "M(2,1)");
}

#[test]
fn tensor_products() {
    let t = |a: &GradedMatrixAlgebra, b: &GradedMatrixAlgebra| isotypic_type(&graded_tensor(a, b)).unwrap().0;
    assert_eq!(t(&q_standard(1), &q_standard(1)), BlockType::m(1, 1));
    assert_eq!(t(&m_standard(1, 1), &q_standard(2)), BlockType::Q { r: 4 });
    assert_eq!(t(&m_standard(1, 1), &m_standard(1, 1)), BlockType::m(2, 2));
    assert_eq!(t(&m_standard(2, 1), &m_standard(1, 2)), BlockType::m(4, 5));
    assert_eq!(t(&q_standard(1), &q_standard(2)), BlockType::m(2, 2));
    assert_eq!(t(&m_standard(2, 0), &m_standard(1, 1)), BlockType::m(2, 2));
}

#[test]
fn regular_decompositions() {
    let r3 = decompose_semisimple(&regular(3)).unwrap();
    assert_eq!(r3.types(), vec![BlockType::Q { r: 1 }, BlockType::m(1, 1)]);
    assert!(r3.dims_consistent());
    let r4 = decompose_semisimple(&regular(4)).unwrap();
    assert_eq!(r4.types(), vec![BlockType::Q { r: 2 }, BlockType::m(2, 2)]);
    assert_eq!(r4.blocks.iter().map(|b| b.dimension).sum::<usize>(), 24);
    let single = decompose_semisimple(&m_standard(1, 0)).unwrap();
    assert_eq!(single.types(), vec![BlockType::m(1, 0)]);
}

#[test]
fn adjoining_epsilon() {
    let c = m_standard(1, 0);
    let ce = adjoin_epsilon(&c);
    assert_eq!(ungraded_block_count(&ce), 2);
    assert_eq!(decompose_semisimple(&ce).unwrap().blocks.len(), 2);
    // Q(1)[eps] has a single ungraded block; A_3[eps] has 2 + 1.
    assert_eq!(ungraded_block_count(&adjoin_epsilon(&q_standard(1))), 1);
    assert_eq!(ungraded_block_count(&adjoin_epsilon(&regular(3))), 3);
}

#[test]
fn graded_centralizers() {
    let a3 = regular(3);
    let all: Vec<SparseMatrix> = a3.generators().iter().map(|g| g.matrix.clone()).collect();
    let center = graded_centralizer(&a3, &all);
    assert_eq!(center.dim, 3);
    assert!(center.is_commutative);

    let a4 = regular(4);
    let b: Vec<SparseMatrix> = a4.generators()[..2].iter().map(|g| g.matrix.clone()).collect();
    let z = graded_centralizer(&a4, &b);
    assert!(z.is_commutative);
    assert_eq!(z.dim, 6);
    let sub = GradedMatrixAlgebra::new(a4.parity().to_vec(), a4.generators()[..2].to_vec()).unwrap();
    assert_eq!(even_part_centralizer_dim(&a4, &sub), z.dim);
}

#[test]
fn validation() {
    let odd_and_even = SparseMatrix::from_i64(&[vec![1, 1], vec![0, 1]]);
    assert_eq!(matrix_parity(&odd_and_even, &[0, 1]), None);
    assert!(matches!(
        GradedMatrixAlgebra::from_pairs(vec![0, 1], vec![("x", odd_and_even)]),
        Err(GradedError::NonHomogeneous(_))
    ));
    assert_eq!(GradedMatrixAlgebra::from_pairs(vec![0, 2], vec![]).unwrap_err(), GradedError::BadParity);
    let small = SparseMatrix::scalar(1, &SqrtNumber::one());
    assert!(matches!(GradedMatrixAlgebra::from_pairs(vec![0, 1], vec![("x", small)]), Err(GradedError::Shape { .. })));
}

#[test]
fn json_roundtrip_validates() {
    let a = q_standard(2);
    let text = serde_json::to_string(&a).unwrap();
    let back: GradedMatrixAlgebra = serde_json::from_str(&text).unwrap();
    assert_eq!(back.graded_dims(), (2, 2));
    assert_eq!(classify_module(&back).unwrap(), ModuleClass::Q { r: 2 });
    let broken = text.replacen("\"parity\":[0,1", "\"parity\":[0,0", 1);
    assert!(serde_json::from_str::<GradedMatrixAlgebra>(&broken).is_err());
}
