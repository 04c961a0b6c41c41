use superspin::exactnum::SqrtNumber;
use superspin::gradedstruct::BlockType;
use superspin::seminormal::{
    analyze_local_pair, build_rep_clifford_tensor, build_rep_plain, build_rep_variant, check_intertwiners,
    check_q_independence, classify_rep, clifford_module, gz_clifford_check, intertwiner_p, regular_decompose,
    restrict_and_branch, spectrum_of, verify_relations, AlgebraTag, CoefficientVariant, GradedRep, PairCase,
    SeminormalError,
};
use superspin::shiftedcomb::{strict_partitions, StrictPartition, VertexType};

fn sp(parts: &[usize]) -> StrictPartition {
    StrictPartition::new(parts.to_vec()).unwrap()
}

fn plain(parts: &[usize]) -> GradedRep {
    build_rep_plain(&sp(parts)).unwrap()
}

fn tensor(parts: &[usize]) -> GradedRep {
    build_rep_clifford_tensor(&sp(parts)).unwrap()
}

fn sorted(mut v: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    v.sort();
    v
}

#[test]
fn clifford_modules() {
    for count in 0..=10 {
        let m = clifford_module(count);
        let gens = m.generators();
        assert_eq!(gens.len(), count);
        for (i, g) in gens.iter().enumerate() {
            assert!(g.matrix.mul(&g.matrix).is_identity());
            assert_eq!(m.matrix_parity(&g.matrix), Some(1));
            for h in &gens[i + 1..] {
                assert!(g.matrix.mul(&h.matrix).add(&h.matrix.mul(&g.matrix)).is_zero());
            }
        }
    }
    let dims: Vec<usize> = (0..=10).map(|c| clifford_module(c).dim()).collect();
    assert_eq!(dims, vec![1, 2, 4, 8, 8, 16, 16, 16, 16, 32, 64]);
}

#[test]
fn plain_dimensions_and_types() {
    let cases: [(&[usize], usize, BlockType, usize); 9] = [
        (&[1], 1, BlockType::m(1, 0), 1),
        (&[2], 2, BlockType::Q { r: 1 }, 1),
        (&[3], 4, BlockType::m(1, 1), 2),
        (&[2, 1], 4, BlockType::Q { r: 1 }, 2),
        (&[4], 8, BlockType::Q { r: 2 }, 2),
        (&[3, 1], 16, BlockType::m(2, 2), 4),
        (&[5], 8, BlockType::m(2, 2), 2),
        (&[4, 1], 24, BlockType::Q { r: 6 }, 2),
        (&[3, 2], 16, BlockType::Q { r: 4 }, 2),
    ];
    for (parts, dim, ty, copies) in cases {
        let rep = plain(parts);
        assert_eq!(rep.dim, dim, "{parts:?}");
        let class = classify_rep(&rep).unwrap();
        assert_eq!((class.block_type, class.copies), (ty, copies), "{parts:?}");
    }
}

#[test]
fn tensor_dimensions_and_types() {
    let dims: Vec<usize> = [&[1][..], &[2], &[3], &[2, 1], &[4], &[3, 1], &[5], &[3, 2]].iter().map(|p| tensor(p).dim).collect();
    assert_eq!(dims, vec![2, 8, 16, 16, 16, 32, 32, 64]);
    let c4 = classify_rep(&tensor(&[4])).unwrap();
    assert_eq!((c4.block_type, c4.copies), (BlockType::Q { r: 8 }, 1));
    let c31 = classify_rep(&tensor(&[3, 1])).unwrap();
    assert_eq!((c31.block_type, c31.copies), (BlockType::m(8, 8), 2));
}

#[test]
fn relations_hold_for_all_small_shapes() {
    for n in 1..=5 {
        for alpha in strict_partitions(n) {
            for rep in [build_rep_plain(&alpha).unwrap(), build_rep_clifford_tensor(&alpha).unwrap()] {
                let r = verify_relations(&rep).unwrap();
                assert!(r.all_pass, "{alpha} {}", rep.algebra);
                assert!(r.checks.iter().all(|c| c.defect_norm == 0.0));
            }
        }
    }
}

#[test]
fn large_plain_build() {
    let rep = plain(&[4, 2, 1]);
    assert_eq!(rep.dim, 112);
    assert!(verify_relations(&rep).unwrap().all_pass);
}

#[test]
fn negative_control() {
    for rep in [plain(&[3, 1]), tensor(&[2, 1])] {
        for g in 0..rep.generators.len() {
            let bad = rep.with_flipped_entry(g);
            let r = verify_relations(&bad).unwrap();
            assert!(!r.all_pass);
            assert!(r.failures().all(|f| f.defect_norm > 0.0));
        }
    }
}

#[test]
fn malformed_reps_are_rejected() {
    let mut rep = plain(&[3]);
    rep.dim = 3;
    assert!(matches!(verify_relations(&rep), Err(SeminormalError::Malformed(_))));
    let mut rep = plain(&[3]);
    rep.generators.pop();
    assert!(matches!(verify_relations(&rep), Err(SeminormalError::Malformed(_))));
}

#[test]
fn spectra() {
    assert_eq!(spectrum_of(&plain(&[3])).unwrap(), vec![vec![0, 1, 3]]);
    assert_eq!(spectrum_of(&plain(&[2, 1])).unwrap(), vec![vec![0, 1, 0]]);
    assert_eq!(sorted(spectrum_of(&plain(&[3, 1])).unwrap()), vec![vec![0, 1, 0, 3], vec![0, 1, 3, 0]]);
    assert_eq!(spectrum_of(&tensor(&[2])).unwrap(), vec![vec![0, 1]]);
    assert_eq!(sorted(spectrum_of(&tensor(&[3, 1])).unwrap()), vec![vec![0, 1, 0, 3], vec![0, 1, 3, 0]]);
}

#[test]
fn clifford_structure_of_gz_image() {
    for parts in [&[3, 1][..], &[3, 2], &[4, 1]] {
        assert!(gz_clifford_check(&plain(parts)).unwrap());
        assert!(gz_clifford_check(&tensor(parts)).unwrap());
    }
}

#[test]
fn local_pairs() {
    let a = analyze_local_pair(&plain(&[3]), 1).unwrap();
    assert_eq!(a.len(), 1);
    assert_eq!((a[0].case, a[0].delta.clone(), a[0].consistent), (PairCase::Fused, SqrtNumber::zero(), true));

    let rep = plain(&[3, 1]);
    let split = analyze_local_pair(&rep, 3).unwrap();
    assert!(split.iter().all(|x| x.case == PairCase::Split && x.consistent && x.partner.is_some()));
    assert!(split.iter().all(|x| !x.delta.is_zero()));
    let fused = analyze_local_pair(&rep, 2).unwrap();
    let row = fused.iter().find(|x| x.pair == (1, 3)).unwrap();
    assert_eq!(row.case, PairCase::Fused);
    for alpha in strict_partitions(5) {
        let rep = build_rep_plain(&alpha).unwrap();
        for i in 1..5 {
            assert!(analyze_local_pair(&rep, i).unwrap().iter().all(|x| x.consistent), "{alpha} i={i}");
        }
    }
}

#[test]
fn intertwiners() {
    for parts in [&[3, 1][..], &[4], &[3, 2]] {
        for c in check_intertwiners(&tensor(parts)).unwrap() {
            assert!(c.squares_swap && c.conjugates_pi && c.support_ok, "{parts:?} i={}", c.position);
        }
    }
    assert!(matches!(intertwiner_p(1, &plain(&[3])), Err(SeminormalError::NeedsTensor(_))));
}

#[test]
fn q_independence() {
    for parts in [&[3, 1][..], &[4, 1], &[3, 2], &[4, 2]] {
        let r = check_q_independence(&plain(parts), 50).unwrap();
        assert!(r.braid_relation_holds && r.independent, "{parts:?}");
    }
    let r = check_q_independence(&plain(&[4, 2]), 50).unwrap();
    assert!(r.tableaux_with_several_paths > 0 && r.paths_compared > 1);
}

#[test]
fn restriction() {
    let three = restrict_and_branch(&plain(&[3]), None).unwrap();
    assert_eq!(three.len(), 1);
    assert_eq!((three[0].partition.clone(), three[0].kind), (sp(&[2]), VertexType::Q));
    assert!(three[0].multiplicity >= 1);

    let support: Vec<StrictPartition> = restrict_and_branch(&plain(&[3, 1]), None).unwrap().into_iter().map(|c| c.partition).collect();
    assert_eq!(support.len(), 2);
    assert!(support.contains(&sp(&[3])) && support.contains(&sp(&[2, 1])));

    let two = restrict_and_branch(&plain(&[2]), None).unwrap();
    assert_eq!(two.len(), 1);
    assert_eq!((two[0].partition.clone(), two[0].kind), (sp(&[1]), VertexType::M));
}

type BlockRow<'a> = (&'a str, BlockType, Vec<Vec<u64>>);

#[test]
fn regular_oracle() {
    let expect: [(usize, Vec<BlockRow>); 4] = [
        (1, vec![("(1)", BlockType::m(1, 0), vec![vec![0]])]),
        (2, vec![("(2)", BlockType::Q { r: 1 }, vec![vec![0, 1]])]),
        (3, vec![("(2,1)", BlockType::Q { r: 1 }, vec![vec![0, 1, 0]]), ("(3)", BlockType::m(1, 1), vec![vec![0, 1, 3]])]),
        (
            4,
            vec![
                ("(4)", BlockType::Q { r: 2 }, vec![vec![0, 1, 3, 6]]),
                ("(3,1)", BlockType::m(2, 2), vec![vec![0, 1, 0, 3], vec![0, 1, 3, 0]]),
            ],
        ),
    ];
    for (n, blocks) in expect {
        let r = regular_decompose(AlgebraTag::Spin, n).unwrap();
        let got: Vec<BlockRow> =
            r.blocks.iter().map(|b| (b.label.as_deref().unwrap(), b.block_type, b.spectrum.clone().unwrap())).collect();
        assert_eq!(got, blocks, "n={n}");
    }
    let r5 = regular_decompose(AlgebraTag::Spin, 5).unwrap();
    assert_eq!(r5.blocks.len(), 3);
    assert_eq!(r5.blocks.iter().map(|b| b.dimension).sum::<usize>(), 120);
    assert!(regular_decompose(AlgebraTag::Spin, 6).is_err());
}

#[test]
fn regular_tensor_oracle() {
    let types = |n| regular_decompose(AlgebraTag::CliffordTensor, n).unwrap().types();
    assert_eq!(types(1), vec![BlockType::Q { r: 1 }]);
    assert_eq!(types(2), vec![BlockType::Q { r: 2 }]);
    assert_eq!(types(3), vec![BlockType::m(2, 2), BlockType::Q { r: 4 }]);
}

#[test]
fn coefficient_variants() {
    let alpha = sp(&[4, 2]);
    let corrected = build_rep_variant(&alpha, false, CoefficientVariant::Corrected).unwrap();
    let printed = build_rep_variant(&alpha, false, CoefficientVariant::Printed).unwrap();
    assert!(verify_relations(&corrected).unwrap().all_pass);
    assert!(!verify_relations(&printed).unwrap().all_pass);
    let report = build_rep_plain(&alpha).unwrap().build.unwrap();
    assert_eq!(report.selected, CoefficientVariant::Corrected);
    assert!(report.variants_differ && report.corrected_passes && !report.printed_passes);
    for n in 1..=5 {
        for alpha in strict_partitions(n) {
            let b = build_rep_plain(&alpha).unwrap().build.unwrap();
            assert!(!b.variants_differ, "{alpha}");
        }
    }
}

#[test]
fn rep_json_roundtrip() {
    let rep = tensor(&[2, 1]);
    let text = serde_json::to_string(&rep).unwrap();
    assert!(text.contains("\"algebra\":\"clifford_tensor_A_n\""));
    assert!(text.contains("\"clifford_word\""));
    let back: GradedRep = serde_json::from_str(&text).unwrap();
    assert_eq!(back, rep);
}
