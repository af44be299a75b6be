use alloc::vec::Vec;

use super::OracleError;
use crate::hypergraph::{BipartiteHypergraph, EdgeId};

/// Lexicographically first perfect matching: `A`-vertices in index order,
/// each trying its edges in edge order. `Ok(None)` when none exists.
pub fn brute_force_perfect_matching(h: &BipartiteHypergraph, max_a: usize) -> Result<Option<Vec<EdgeId>>, OracleError> {
    if h.a_count() > max_a {
        return Err(OracleError::InstanceTooLarge {
            a_count: h.a_count(),
            cap: max_a,
        });
    }
    if (0..h.a_count()).any(|a| h.edges_of_a(a).is_empty()) {
        return Ok(None);
    }
    let mut used = alloc::vec![false; h.b_count()];
    let mut picked = Vec::with_capacity(h.a_count());
    Ok(extend(h, 0, &mut used, &mut picked).then_some(picked))
}

fn extend(h: &BipartiteHypergraph, a: usize, used: &mut [bool], picked: &mut Vec<EdgeId>) -> bool {
    if a == h.a_count() {
        return true;
    }
    for &e in h.edges_of_a(a) {
        let bs = &h.edge(e).bs;
        if bs.iter().any(|&b| used[b]) {
            continue;
        }
        for &b in bs {
            used[b] = true;
        }
        picked.push(e);
        if extend(h, a + 1, used, picked) {
            return true;
        }
        picked.pop();
        for &b in bs {
            used[b] = false;
        }
    }
    false
}
