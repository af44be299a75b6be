use std::collections::BTreeSet;

use hypermatch_core::engine::{find_perfect_matching, Parameters, Solution};
use hypermatch_core::oracles::{
    brute_force_perfect_matching, check_haxell, min_hitting_set, verify_witness, HaxellMode, HaxellStatus,
};
use hypermatch_core::ratio::{int, parse_rational};
use hypermatch_core::tree::{build_layer, validate_tree, AlternatingTree, Layer, LayerBuilder};
use hypermatch_core::{BipartiteHypergraph, PartialMatching};
use proptest::prelude::*;

/// Random instance: `r ∈ 2..=4`, `|A| ≤ 6`, `|B| ≤ 10`, at most 14 edges.
fn instance() -> impl Strategy<Value = BipartiteHypergraph> {
    (2usize..=4, 1usize..=6, 0usize..=7).prop_flat_map(|(r, a, extra_b)| {
        let b = r - 1 + extra_b + 2;
        let edge = (0..a, prop::collection::btree_set(0..b, r - 1));
        prop::collection::vec(edge, 0..14).prop_map(move |raw| {
            let mut seen = BTreeSet::new();
            let edges: Vec<(usize, Vec<usize>)> = raw
                .into_iter()
                .map(|(a, bs)| (a, bs.into_iter().collect::<Vec<_>>()))
                .filter(|e| seen.insert(e.clone()))
                .collect();
            BipartiteHypergraph::new(r, a, b, edges).unwrap()
        })
    })
}

/// A maximal matching picked greedily in the order given by `perm`.
fn greedy_matching(h: &BipartiteHypergraph, perm: &[usize]) -> PartialMatching {
    let mut m = PartialMatching::new(h);
    let n = h.edge_count();
    for &k in perm {
        if n == 0 {
            break;
        }
        let e = k % n;
        if !m.is_matched(h.edge(e).a) && m.is_immediately_addable(h, e) {
            m.insert(h, e).unwrap();
        }
    }
    m
}

fn exhaustive_tau(h: &BipartiteHypergraph, family: &[usize]) -> usize {
    (0u32..1 << h.b_count())
        .filter(|mask| {
            family
                .iter()
                .all(|&e| h.edge(e).bs.iter().any(|&b| mask & (1 << b) != 0))
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn blockers_bounded_and_match_addability(h in instance(), perm in prop::collection::vec(any::<usize>(), 0..20)) {
        let m = greedy_matching(&h, &perm);
        for e in 0..h.edge_count() {
            let blockers = m.blocking_edges(&h, e);
            prop_assert!(blockers.len() < h.r());
            prop_assert_eq!(blockers.is_empty(), m.is_immediately_addable(&h, e));
        }
    }

    #[test]
    fn swap_keeps_matched_vertices(h in instance(), perm in prop::collection::vec(any::<usize>(), 0..20)) {
        let mut m = greedy_matching(&h, &perm);
        for f in m.edges() {
            let a = h.edge(f).a;
            let candidate = h.edges_of_a(a).iter().copied().find(|&e| e != f && m.is_immediately_addable(&h, e));
            if let Some(e) = candidate {
                let before = m.matched_vertices();
                m.swap(&h, f, e).unwrap();
                prop_assert_eq!(m.matched_vertices(), before);
                prop_assert!(hypermatch_core::verify_matching(&h, &m.edges(), false).is_ok());
                prop_assert!(m.contains(&h, e) && !m.contains(&h, f));
            }
        }
    }

    #[test]
    fn incident_edges_is_additive(h in instance(), split in any::<u32>()) {
        let all: Vec<usize> = (0..h.a_count()).collect();
        prop_assert_eq!(h.incident_edges(&all), (0..h.edge_count()).collect::<Vec<_>>());
        let (left, right): (Vec<usize>, Vec<usize>) = all.iter().partition(|&&a| split & (1 << a) != 0);
        let mut union = h.incident_edges(&left);
        union.extend(h.incident_edges(&right));
        union.sort_unstable();
        prop_assert_eq!(union, h.incident_edges(&all));
    }

    #[test]
    fn hitting_set_is_exact(h in instance(), pick in any::<u32>()) {
        let family: Vec<usize> = (0..h.edge_count()).filter(|e| pick & (1 << e) != 0).collect();
        let res = min_hitting_set(&h, &family, None).unwrap();
        prop_assert_eq!(res.size, exhaustive_tau(&h, &family));
        prop_assert_eq!(res.witness.len(), res.size);
        for &e in &family {
            prop_assert!(h.edge(e).bs.iter().any(|b| res.witness.contains(b)));
        }
    }

    #[test]
    fn graph_tau_is_neighbourhood_size(h in instance(), pick in any::<u32>()) {
        prop_assume!(h.r() == 2);
        let s: Vec<usize> = (0..h.a_count()).filter(|a| pick & (1 << a) != 0).collect();
        let family = h.incident_edges(&s);
        let neighbours: BTreeSet<usize> = family.iter().map(|&e| h.edge(e).bs[0]).collect();
        prop_assert_eq!(min_hitting_set(&h, &family, None).unwrap().size, neighbours.len());
    }

    #[test]
    fn classic_condition_implies_matching(h in instance()) {
        let zero = int(0);
        if check_haxell(&h, &zero, HaxellMode::Classic, 20).unwrap() == HaxellStatus::Satisfied {
            prop_assert!(brute_force_perfect_matching(&h, 20).unwrap().is_some());
        }
    }

    #[test]
    fn first_layer_build_is_legal(h in instance(), perm in prop::collection::vec(any::<usize>(), 0..20), u in 1usize..4) {
        let m = greedy_matching(&h, &perm);
        let Some(root) = (0..h.a_count()).find(|&a| !m.is_matched(a)) else { return Ok(()) };
        let mut tree = AlternatingTree::new(&h, root, u);
        // grow a few layers without collapsing
        for _ in 0..3 {
            let next = tree.depth() + 1;
            let parent = tree.parent_set(&h, next);
            let layer = build_layer(&h, &m, tree.occupancy(), &parent, Layer::default(), u);
            prop_assert!(layer.y.len() <= (h.r() - 1) * layer.x.len());
            let mut per_a = std::collections::BTreeMap::new();
            for &e in &layer.x {
                *per_a.entry(h.edge(e).a).or_insert(0usize) += 1;
            }
            prop_assert!(per_a.values().all(|&c| c <= u));
            if layer.x.is_empty() {
                break;
            }
            let degrees_before: Vec<usize> = (0..h.a_count()).map(|a| tree.tree_degree(a)).collect();
            tree.push_layer(&h, layer.clone());
            prop_assert_eq!(validate_tree(&h, &m, &tree), Ok(()));
            for (a, before) in degrees_before.iter().enumerate() {
                let added = layer.x.iter().chain(&layer.y).filter(|&&e| h.edge(e).a == a).count();
                prop_assert_eq!(tree.tree_degree(a), before + added);
            }
        }
    }

    #[test]
    fn sweep_equals_repeated_least_pair(h in instance(), perm in prop::collection::vec(any::<usize>(), 0..20), u in 1usize..4) {
        let m = greedy_matching(&h, &perm);
        let Some(root) = (0..h.a_count()).find(|&a| !m.is_matched(a)) else { return Ok(()) };
        let tree = AlternatingTree::new(&h, root, u);
        let parent = tree.parent_set(&h, 1);
        let mut stepwise = LayerBuilder::new(&h, &m, tree.occupancy(), &parent, Layer::default(), u);
        while let Some((_, e)) = stepwise.find_addable_edge() {
            stepwise.add_edge(e);
        }
        let swept = build_layer(&h, &m, tree.occupancy(), &parent, Layer::default(), u);
        prop_assert_eq!(stepwise.layer(), &swept);
    }

    #[test]
    fn solver_outcomes_verify(h in instance(), eps_idx in 0usize..3) {
        let eps = parse_rational(["1", "1/2", "1/4"][eps_idx]).unwrap();
        let mut p = Parameters::new(h.r(), h.a_count(), eps.clone()).unwrap();
        p.check_invariants = true;
        let (solution, _) = find_perfect_matching(&h, &p, &mut ()).unwrap();
        match solution {
            Solution::PerfectMatching(edges) => {
                prop_assert!(hypermatch_core::verify_matching(&h, &edges, true).is_ok());
            }
            Solution::Witness(cert) => {
                prop_assert_eq!(verify_witness(&h, &cert), Ok(()));
                let status = check_haxell(&h, &eps, HaxellMode::Strengthened, 20).unwrap();
                prop_assert!(status != HaxellStatus::Satisfied);
                let tau = min_hitting_set(&h, &h.incident_edges(&cert.s), None).unwrap().size;
                prop_assert!(int(tau) <= cert.bound);
            }
        }
    }
}
