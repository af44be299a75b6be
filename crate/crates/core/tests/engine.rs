use hypermatch_core::engine::{
    augment, find_perfect_matching, growth_check, AugmentOutcome, Parameters, Solution, SolveStats, TraceEvent,
};
use hypermatch_core::instances::{gen_guaranteed, GeneratorMode, GeneratorSpec};
use hypermatch_core::oracles::{brute_force_perfect_matching, verify_witness};
use hypermatch_core::ratio::{int, parse_rational, BigRational};
use hypermatch_core::tree::{build_layer, AlternatingTree, Layer};
use hypermatch_core::{verify_matching, BipartiteHypergraph, PartialMatching};

fn q(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

fn checked(h: &BipartiteHypergraph, eps: &str) -> Parameters {
    let mut p = Parameters::new(h.r(), h.a_count(), q(eps)).unwrap();
    p.check_invariants = true;
    p
}

#[test]
fn empty_instance_has_empty_matching() {
    let h = BipartiteHypergraph::new(3, 0, 0, vec![]).unwrap();
    let (sol, _) = find_perfect_matching(&h, &checked(&h, "1"), &mut ()).unwrap();
    assert_eq!(sol, Solution::PerfectMatching(vec![]));
}

#[test]
fn complete_graph_k22() {
    let h = BipartiteHypergraph::new(2, 2, 2, vec![(0, vec![0]), (0, vec![1]), (1, vec![0]), (1, vec![1])]).unwrap();
    assert!(brute_force_perfect_matching(&h, 20).unwrap().is_some());
    let (sol, _) = find_perfect_matching(&h, &checked(&h, "1/2"), &mut ()).unwrap();
    match sol {
        Solution::PerfectMatching(edges) => {
            assert_eq!(edges.len(), 2);
            assert!(verify_matching(&h, &edges, true).is_ok());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn guaranteed_four_vertices() {
    let mut spec = GeneratorSpec::new(GeneratorMode::Guaranteed, 3, 4, 32, 2);
    spec.d = Some(4);
    let h = gen_guaranteed(&spec, &q("1")).unwrap();
    assert!(brute_force_perfect_matching(&h, 20).unwrap().is_some());
    let (sol, _) = find_perfect_matching(&h, &checked(&h, "1"), &mut ()).unwrap();
    match sol {
        Solution::PerfectMatching(edges) => assert!(verify_matching(&h, &edges, true).is_ok()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn first_layer_examples() {
    // two disjoint edges, empty matching
    let h = BipartiteHypergraph::new(3, 1, 4, vec![(0, vec![0, 1]), (0, vec![2, 3])]).unwrap();
    let m = PartialMatching::new(&h);
    let tree = AlternatingTree::new(&h, 0, 90);
    let l1 = build_layer(&h, &m, tree.occupancy(), &[0], Layer::default(), 90);
    assert_eq!(l1, Layer::new(vec![0, 1], vec![]));

    // one edge blocked through b1
    let h = BipartiteHypergraph::new(3, 2, 5, vec![(0, vec![0, 1]), (1, vec![1, 4])]).unwrap();
    let m = PartialMatching::from_edges(&h, &[1]).unwrap();
    let tree = AlternatingTree::new(&h, 0, 90);
    let l1 = build_layer(&h, &m, tree.occupancy(), &[0], Layer::default(), 90);
    assert_eq!(l1, Layer::new(vec![0], vec![1]));
}

#[test]
fn growth_check_boundary_values() {
    let p = Parameters::new(3, 100, q("1")).unwrap();
    assert_eq!(p.small_tree_threshold, 45);
    assert!(growth_check(&p, 1, 1));
    assert!(!growth_check(&p, 1, 0));
    assert!(growth_check(&p, 50, 2));
}

/// Layer 2 collapses through a swap in layer 1 before the root is matched.
#[test]
fn collapse_with_swap_trace() {
    // e0 = (a0; b0,b1), e1 = (a1; b1,b4) matched, e2 = (a1; b7,b8) free
    let h = BipartiteHypergraph::new(3, 2, 9, vec![(0, vec![0, 1]), (1, vec![1, 4]), (1, vec![7, 8])]).unwrap();
    let mut m = PartialMatching::from_edges(&h, &[1]).unwrap();
    let mut trace: Vec<TraceEvent> = Vec::new();
    let mut stats = SolveStats::default();
    let out = augment(&h, &mut m, 0, &checked(&h, "1"), &mut stats, &mut trace).unwrap();
    assert_eq!(out, AugmentOutcome::Matched);
    assert_eq!(m.edges(), vec![0, 2]);
    assert!(trace.contains(&TraceEvent::Collapse { layer: 2, swaps: 1 }));
    assert!(trace.contains(&TraceEvent::Collapse { layer: 1, swaps: 1 }));
    assert_eq!(stats.swaps, 2);
}

#[test]
fn witness_for_funnel_graph() {
    let h = BipartiteHypergraph::new(2, 2, 1, vec![(0, vec![0]), (1, vec![0])]).unwrap();
    for eps in ["1", "1/2", "1/100"] {
        let (sol, _) = find_perfect_matching(&h, &checked(&h, eps), &mut ()).unwrap();
        match sol {
            Solution::Witness(cert) => {
                // (a0;b0) is matched first, then a1 fails to grow past it
                assert_eq!(cert.s, vec![0, 1]);
                assert_eq!(cert.hitting_set, vec![0]);
                assert_eq!(cert.bound, int(1) + q(eps));
                assert_eq!(verify_witness(&h, &cert), Ok(()));
            }
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn signatures_decrease_within_each_augmentation() {
    let mut spec = GeneratorSpec::new(GeneratorMode::Guaranteed, 3, 6, 80, 17);
    spec.extra_edges = 30;
    let h = gen_guaranteed(&spec, &q("1")).unwrap();
    let mut trace: Vec<TraceEvent> = Vec::new();
    let (sol, stats) = find_perfect_matching(&h, &checked(&h, "1"), &mut trace).unwrap();
    assert!(matches!(sol, Solution::PerfectMatching(_)));
    assert_eq!(stats.signature_unresolved, 0);
    let mut last = None;
    for event in &trace {
        match event {
            TraceEvent::AugmentStart { .. } => last = None,
            TraceEvent::IterationStart { signature, .. } => {
                let sig = signature.clone().expect("signatures requested");
                if let Some(prev) = &last {
                    assert!(sig < *prev);
                }
                assert!(sig.is_abs_monotone());
                last = Some(sig);
            }
            _ => {}
        }
    }
}
