use std::collections::BTreeSet;

use proptest::prelude::*;
use superspin::gradedstruct::BlockType;
use superspin::shiftedcomb::{
    admissible_orbit, admissible_transpositions, algebra_from_graph, is_fused, odd_partition_count_check,
    odd_partitions, partitions, path_equivalence_classes, schur_branching_graph, spectrum_conditions, spectrum_vector,
    standard_tableaux, strict_partitions, triangular, triangular_root, BranchingGraph, CombError, GraphEdge,
    GraphSource, GraphVertex, ShiftedTableau, StrictPartition, VertexType,
};

fn sp(parts: &[usize]) -> StrictPartition {
    StrictPartition::new(parts.to_vec()).unwrap()
}

#[test]
fn strict_partition_lists() {
    assert_eq!(strict_partitions(4), vec![sp(&[4]), sp(&[3, 1])]);
    assert_eq!(strict_partitions(1), vec![sp(&[1])]);
    let counts: Vec<usize> = (1..=7).map(|n| strict_partitions(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 2, 3, 4, 5]);
    for n in 1..=12 {
        assert_eq!(strict_partitions(n).len(), odd_partitions(n).len(), "n={n}");
    }
    assert_eq!(partitions(5).len(), 7);
}

#[test]
fn parsing() {
    assert_eq!(StrictPartition::parse("3,1").unwrap(), sp(&[3, 1]));
    assert!(matches!(StrictPartition::parse("1,3"), Err(CombError::NotStrict(_))));
    assert!(matches!(StrictPartition::parse("2,2"), Err(CombError::NotStrict(_))));
    assert!(matches!(StrictPartition::parse("x"), Err(CombError::Parse(_))));
    assert_eq!(sp(&[4, 2, 1]).to_string(), "(4,2,1)");
}

#[test]
fn tableau_counts() {
    assert_eq!(standard_tableaux(&sp(&[2, 1])).len(), 1);
    assert_eq!(standard_tableaux(&sp(&[3, 1])).len(), 2);
    for n in 1..=6 {
        assert_eq!(standard_tableaux(&sp(&[n])).len(), 1);
    }
    assert_eq!(standard_tableaux(&sp(&[4, 2, 1])).len(), 7);
    assert_eq!(standard_tableaux(&sp(&[5, 3, 1])).len(), 42);
    for n in 1..=10 {
        for alpha in strict_partitions(n) {
            assert_eq!(standard_tableaux(&alpha).len() as u128, shifted_count(alpha.parts()), "{alpha}");
        }
    }
}

/// `n! / prod l_i! * prod_{i<j} (l_i - l_j) / (l_i + l_j)`.
fn shifted_count(l: &[usize]) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    let mut num = fact(l.iter().sum());
    let mut den: u128 = l.iter().map(|&x| fact(x)).product();
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            num *= (l[i] - l[j]) as u128;
            den *= (l[i] + l[j]) as u128;
        }
    }
    assert_eq!(num % den, 0);
    num / den
}

#[test]
fn row_reading_comes_first() {
    let alpha = sp(&[3, 1]);
    let tabs = standard_tableaux(&alpha);
    assert_eq!(tabs[0], ShiftedTableau::row_reading(&alpha));
    assert_eq!(tabs[0].rows, vec![vec![1, 2, 3], vec![4]]);
    assert!(ShiftedTableau::new(alpha, vec![vec![1, 2, 4], vec![3]]).is_ok());
    assert!(ShiftedTableau::new(sp(&[3, 1]), vec![vec![1, 3, 4], vec![2]]).is_err());
}

#[test]
fn spectrum_vectors() {
    let t = &standard_tableaux(&sp(&[3]))[0];
    assert_eq!(spectrum_vector(t).b, vec![0, 1, 2]);
    assert_eq!(spectrum_vector(t).a, vec![0, 1, 3]);
    let u = &standard_tableaux(&sp(&[2, 1]))[0];
    assert_eq!(spectrum_vector(u).b, vec![0, 1, 0]);
    assert_eq!(spectrum_vector(u).a, vec![0, 1, 0]);
    let v: Vec<Vec<u64>> = standard_tableaux(&sp(&[3, 1])).iter().map(|t| spectrum_vector(t).a).collect();
    assert_eq!(v, vec![vec![0, 1, 3, 0], vec![0, 1, 0, 3]]);
}

#[test]
fn fusion_and_admissibility() {
    assert!(is_fused(0, 1));
    assert!(is_fused(1, 3));
    assert!(!is_fused(3, 0));
    let t = ShiftedTableau::row_reading(&sp(&[3, 1]));
    assert_eq!(admissible_transpositions(&t), vec![3]);
    assert_eq!(admissible_orbit(&t).len(), 2);
}

#[test]
fn spectrum_condition_reports() {
    for n in 1..=7 {
        let r = spectrum_conditions(n);
        assert!(r.condition1 && r.condition2 && r.condition4, "n={n}");
        assert!(r.injective && r.admissible_matches_fusion && r.orbits_connected, "n={n}");
    }
    assert_eq!(spectrum_conditions(3).condition3_exceptions, vec![vec![0, 1, 0]]);
}

#[test]
fn odd_partition_counts() {
    let c5 = odd_partition_count_check(5).unwrap();
    assert_eq!((c5.strict_count, c5.odd_count, c5.supercenter_dim, c5.all_equal), (3, 3, Some(3), true));
    let c2 = odd_partition_count_check(2).unwrap();
    assert_eq!((c2.strict_count, c2.odd_count, c2.supercenter_dim, c2.all_equal), (1, 1, Some(1), true));
    let c7 = odd_partition_count_check(7).unwrap();
    assert_eq!((c7.strict_count, c7.odd_count), (5, 5));
    assert!(c7.all_equal);
    assert!(odd_partition_count_check(8).is_err());
}

#[test]
fn schur_graph_level_three() {
    let g = schur_branching_graph(3, GraphSource::Combinatorial).unwrap();
    let parts: Vec<Vec<StrictPartition>> = g.levels.iter().map(|l| l.iter().map(|v| v.partition.clone()).collect()).collect();
    assert_eq!(parts[1], vec![sp(&[1])]);
    assert_eq!(parts[2], vec![sp(&[2])]);
    assert_eq!(parts[3], vec![sp(&[3]), sp(&[2, 1])]);
    let top: BTreeSet<_> = g.edge_support().into_iter().filter(|e| e.0 == 3).map(|e| (e.1, e.2)).collect();
    assert_eq!(top, BTreeSet::from([(sp(&[2]), sp(&[3])), (sp(&[2]), sp(&[2, 1]))]));
    assert_eq!(g.vertex_count(), 4);
    g.validate().unwrap();
}

#[test]
fn graph_algebras() {
    let blocks = |n: usize| -> Vec<BlockType> {
        algebra_from_graph(&BranchingGraph::combinatorial(n)).unwrap().into_iter().map(|b| b.block).collect()
    };
    assert_eq!(blocks(3), vec![BlockType::m(1, 1), BlockType::Q { r: 1 }]);
    assert_eq!(blocks(4), vec![BlockType::Q { r: 2 }, BlockType::m(2, 2)]);
    assert_eq!(blocks(5), vec![BlockType::m(2, 2), BlockType::Q { r: 6 }, BlockType::Q { r: 4 }]);
    for n in 1..=8 {
        let total: usize = blocks(n).iter().map(BlockType::algebra_dim).sum();
        assert_eq!(total, (1..=n).product::<usize>(), "n={n}");
    }
}

#[test]
fn hand_built_graph() {
    // Two sources, one fixed vertex, then one antipodal pair.
    let v = |p: &[usize], kind| GraphVertex { partition: StrictPartition::new(p.to_vec()).unwrap(), kind };
    let g = BranchingGraph {
        n: 2,
        source: GraphSource::Combinatorial,
        levels: vec![vec![v(&[], VertexType::M)], vec![v(&[1], VertexType::Q)], vec![v(&[2], VertexType::M)]],
        edges: vec![
            GraphEdge { level: 1, from: 0, to: 0, multiplicity: 1 },
            GraphEdge { level: 2, from: 0, to: 0, multiplicity: 1 },
        ],
    };
    assert_eq!(algebra_from_graph(&g).unwrap()[0].block, BlockType::m(1, 1));
    let mut broken = g.clone();
    broken.edges.pop();
    assert!(matches!(broken.validate(), Err(CombError::Invariant(_))));
}

#[test]
fn path_classes() {
    let c3 = path_equivalence_classes(&BranchingGraph::combinatorial(3));
    let q = c3.iter().find(|c| c.partition == sp(&[2, 1])).unwrap();
    assert_eq!((q.copy, q.classes.len()), (0, 1));
    let c4 = path_equivalence_classes(&BranchingGraph::combinatorial(4));
    for c in c4.iter().filter(|c| c.partition == sp(&[3, 1])) {
        assert_eq!(c.classes.len(), 2);
    }
}

#[test]
fn dot_output() {
    let g = BranchingGraph::combinatorial(3);
    let dot = g.to_dot(false);
    assert_eq!(dot.matches("[label=").count(), 4);
    assert!(dot.contains("\"(2,1) [Q]\""));
    let doubled = g.to_dot(true);
    assert!(doubled.contains("dashed"));
}

#[test]
fn graph_from_reps_matches() {
    for n in 1..=4 {
        let a = schur_branching_graph(n, GraphSource::Combinatorial).unwrap();
        let b = schur_branching_graph(n, GraphSource::FromReps).unwrap();
        assert_eq!(a.vertex_set(), b.vertex_set(), "n={n}");
        assert_eq!(a.edge_support(), b.edge_support(), "n={n}");
    }
}

proptest! {
    #[test]
    fn triangular_roots(b in 0usize..100_000) {
        prop_assert_eq!(triangular_root(triangular(b)), Some(b));
    }

    #[test]
    fn spectra_are_injective(k in 0usize..strict_partitions(8).len()) {
        let alpha = &strict_partitions(8)[k];
        let tabs = standard_tableaux(alpha);
        let mut seen = BTreeSet::new();
        for t in &tabs {
            let sv = spectrum_vector(t);
            prop_assert_eq!(sv.b[0], 0);
            prop_assert!(seen.insert(sv.a));
        }
        prop_assert_eq!(admissible_orbit(&tabs[0]).len(), tabs.len());
    }
}
