use alloc::vec::Vec;

use crate::hypergraph::{BVertex, BipartiteHypergraph, EdgeId};

/// A minimum hitting set of an edge family: `size = τ(F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetResult {
    pub size: usize,
    /// `B`-vertices, increasing.
    pub witness: Vec<BVertex>,
}

/// Returned by [`min_hitting_set`] when every hitting set is larger than
/// the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExceedsBudget;

/// Exact `τ(F)` by branch and bound.
///
/// Branching takes the unhit edge with the fewest non-excluded vertices and
/// tries those vertices in index order, excluding each one from the later
/// siblings. Nodes are pruned against the incumbent with a greedy packing of
/// vertex-disjoint unhit edges. With a budget, only hitting sets of size at
/// most `budget` are searched for; the result is still exact whenever
/// `τ(F) ≤ budget`.
pub fn min_hitting_set(
    h: &BipartiteHypergraph,
    family: &[EdgeId],
    budget: Option<usize>,
) -> Result<HittingSetResult, ExceedsBudget> {
    // Compact the vertex space to the family's B-vertices.
    let mut verts: Vec<BVertex> = family.iter().flat_map(|&e| h.edge(e).bs.iter().copied()).collect();
    verts.sort_unstable();
    verts.dedup();
    let local = |b: BVertex| verts.binary_search(&b).unwrap();
    let mut sets: Vec<Vec<usize>> = family
        .iter()
        .map(|&e| h.edge(e).bs.iter().map(|&b| local(b)).collect())
        .collect();
    sets.sort();
    sets.dedup();

    let cap = budget.map_or(sets.len(), |b| b.min(sets.len()));
    let mut search = Search {
        sets: &sets,
        chosen: alloc::vec![false; verts.len()],
        excluded: alloc::vec![false; verts.len()],
        stack: Vec::new(),
        best_size: cap + 1,
        best: None,
    };
    search.run();
    match search.best {
        Some(best) => {
            let mut witness: Vec<BVertex> = best.into_iter().map(|i| verts[i]).collect();
            witness.sort_unstable();
            Ok(HittingSetResult {
                size: witness.len(),
                witness,
            })
        }
        None => Err(ExceedsBudget),
    }
}

struct Search<'a> {
    sets: &'a [Vec<usize>],
    chosen: Vec<bool>,
    excluded: Vec<bool>,
    stack: Vec<usize>,
    best_size: usize,
    best: Option<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self) {
        let unhit: Vec<usize> = (0..self.sets.len())
            .filter(|&i| !self.sets[i].iter().any(|&v| self.chosen[v]))
            .collect();
        if unhit.is_empty() {
            if self.stack.len() < self.best_size {
                self.best_size = self.stack.len();
                self.best = Some(self.stack.clone());
            }
            return;
        }
        if self.stack.len() + 1 >= self.best_size {
            return;
        }
        let avail = |i: usize| self.sets[i].iter().filter(|&&v| !self.excluded[v]).count();
        let pivot = *unhit.iter().min_by_key(|&&i| (avail(i), i)).unwrap();
        if avail(pivot) == 0 {
            return;
        }
        if self.stack.len() + self.packing_bound(&unhit) >= self.best_size {
            return;
        }
        let candidates: Vec<usize> = self.sets[pivot]
            .iter()
            .copied()
            .filter(|&v| !self.excluded[v])
            .collect();
        let mut newly_excluded = Vec::new();
        for v in candidates {
            self.chosen[v] = true;
            self.stack.push(v);
            self.run();
            self.stack.pop();
            self.chosen[v] = false;
            self.excluded[v] = true;
            newly_excluded.push(v);
        }
        for v in newly_excluded {
            self.excluded[v] = false;
        }
    }

    /// Size of a greedy family of unhit edges that are pairwise disjoint on
    /// non-excluded vertices; each needs its own new vertex.
    fn packing_bound(&self, unhit: &[usize]) -> usize {
        let mut degree = alloc::vec![0usize; self.chosen.len()];
        for &i in unhit {
            for &v in &self.sets[i] {
                if !self.excluded[v] {
                    degree[v] += 1;
                }
            }
        }
        let mut order: Vec<(usize, usize, usize)> = unhit
            .iter()
            .map(|&i| {
                let live = self.sets[i].iter().filter(|&&v| !self.excluded[v]);
                let count = live.clone().count();
                let weight = live.map(|&v| degree[v]).sum();
                (count, weight, i)
            })
            .collect();
        order.sort_unstable();
        let mut used = alloc::vec![false; self.chosen.len()];
        let mut packed = 0;
        for (_, _, i) in order {
            let live = || self.sets[i].iter().filter(|&&v| !self.excluded[v]);
            if live().all(|&v| !used[v]) {
                for &v in live() {
                    used[v] = true;
                }
                packed += 1;
            }
        }
        packed
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn exhaustive_tau(h: &BipartiteHypergraph, family: &[EdgeId]) -> usize {
        let n = h.b_count();
        (0u32..1 << n)
            .filter(|mask| {
                family
                    .iter()
                    .all(|&e| h.edge(e).bs.iter().any(|&b| mask & (1 << b) != 0))
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn empty_family() {
        let h = BipartiteHypergraph::new(3, 1, 2, vec![(0, vec![0, 1])]).unwrap();
        assert_eq!(
            min_hitting_set(&h, &[], None),
            Ok(HittingSetResult {
                size: 0,
                witness: vec![]
            })
        );
    }

    #[test]
    fn common_vertex() {
        let h = BipartiteHypergraph::new(3, 2, 3, vec![(0, vec![0, 1]), (1, vec![0, 2])]).unwrap();
        assert_eq!(
            min_hitting_set(&h, &[0, 1], None),
            Ok(HittingSetResult {
                size: 1,
                witness: vec![0]
            })
        );
    }

    #[test]
    fn disjoint_edges_need_one_vertex_each() {
        let h = BipartiteHypergraph::new(3, 3, 6, vec![(0, vec![0, 1]), (1, vec![2, 3]), (2, vec![4, 5])]).unwrap();
        assert_eq!(exhaustive_tau(&h, &[0, 1, 2]), 3);
        let res = min_hitting_set(&h, &[0, 1, 2], None).unwrap();
        assert_eq!(res.size, 3);
        assert_eq!(min_hitting_set(&h, &[0, 1, 2], Some(2)), Err(ExceedsBudget));
        assert_eq!(min_hitting_set(&h, &[0, 1, 2], Some(3)).unwrap().size, 3);
    }

    #[test]
    fn budget_zero() {
        let h = BipartiteHypergraph::new(2, 1, 1, vec![(0, vec![0])]).unwrap();
        assert_eq!(min_hitting_set(&h, &[], Some(0)).unwrap().size, 0);
        assert_eq!(min_hitting_set(&h, &[0], Some(0)), Err(ExceedsBudget));
    }
}
