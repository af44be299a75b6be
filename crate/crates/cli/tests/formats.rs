use std::collections::BTreeSet;

use hypermatch::hbm::{parse_instance, serialize_instance, serialize_with_comments};
use hypermatch::report::{parse_result, render_result, Claim};
use hypermatch_core::engine::{Solution, SolveStats};
use hypermatch_core::ratio::BigRational;
use hypermatch_core::{BipartiteHypergraph, WitnessCertificate};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = BipartiteHypergraph> {
    (2usize..=5, 1usize..=8, 0usize..=6).prop_flat_map(|(r, a, extra_b)| {
        let b = r - 1 + extra_b;
        let edge = (0..a, prop::collection::btree_set(0..b, r - 1));
        prop::collection::vec(edge, 0..20).prop_map(move |raw| {
            let mut seen = BTreeSet::new();
            let edges: Vec<(usize, Vec<usize>)> = raw
                .into_iter()
                .map(|(a, bs)| (a, bs.into_iter().collect()))
                .filter(|e| seen.insert(e.clone()))
                .collect();
            BipartiteHypergraph::new(r, a, b, edges).unwrap()
        })
    })
}

fn epsilon() -> impl Strategy<Value = BigRational> {
    (1i64..50, 1i64..50).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn stats() -> impl Strategy<Value = SolveStats> {
    (any::<u32>(), 0usize..40, any::<u32>(), any::<u32>()).prop_map(|(i, l, s, b)| SolveStats {
        iterations: i.into(),
        max_layers: l,
        swaps: s.into(),
        build_ops: b.into(),
        ..SolveStats::default()
    })
}

proptest! {
    #[test]
    fn hbm_round_trips(h in instance(), comments in prop::collection::vec("[a-z ]{0,12}", 0..3)) {
        let text = serialize_instance(&h);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(serialize_instance(&back), text.clone());
        let commented: Vec<String> = comments.iter().map(|c| c.trim().to_string()).collect();
        prop_assert_eq!(parse_instance(&serialize_with_comments(&h, &commented)).unwrap(), h);
    }

    #[test]
    fn matching_documents_round_trip(edges in prop::collection::vec(0usize..1000, 0..30), eps in epsilon(), st in stats()) {
        let text = render_result(&Solution::PerfectMatching(edges.clone()), &eps, &st);
        prop_assert_eq!(parse_result(&text).unwrap(), Claim::PerfectMatching { epsilon: eps, edges });
    }

    #[test]
    fn witness_documents_round_trip(h in instance(), pick in any::<u32>(), eps in epsilon(), st in stats()) {
        let s: Vec<usize> = (0..h.a_count()).filter(|a| pick & (1 << a) != 0).collect();
        let hs: Vec<usize> = (0..h.b_count()).filter(|b| pick & (1 << (b + 8)) != 0).collect();
        let cert = WitnessCertificate::new(&h, s, hs, eps.clone());
        let text = render_result(&Solution::Witness(cert.clone()), &eps, &st);
        prop_assert_eq!(
            parse_result(&text).unwrap(),
            Claim::Witness { epsilon: eps, s: cert.s, hitting_set: cert.hitting_set, bound: cert.bound }
        );
    }
}
