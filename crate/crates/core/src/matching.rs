//! Partial matchings, blocking edges and the swapping operation.

use alloc::vec::Vec;

use crate::hypergraph::{AVertex, BVertex, BipartiteHypergraph, EdgeId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SwapError {
    #[error("edge {0} is not in the matching")]
    NotInMatching(EdgeId),
    #[error("edge {0} is already in the matching")]
    AlreadyInMatching(EdgeId),
    #[error("edge {edge} is blocked by matching edge {blocker}")]
    NotAddable { edge: EdgeId, blocker: EdgeId },
    #[error("edges {out} and {incoming} belong to different A-vertices")]
    AVertexMismatch { out: EdgeId, incoming: EdgeId },
    #[error("A-vertex {0} is already matched")]
    AlreadyMatched(AVertex),
}

/// What [`verify_matching`] found wrong.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatchingViolation {
    #[error("edge id {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("edge {0} listed twice")]
    RepeatedEdge(EdgeId),
    #[error("edges {e} and {f} overlap at A-vertex {a}")]
    OverlapA { e: EdgeId, f: EdgeId, a: AVertex },
    #[error("edges {e} and {f} overlap at B-vertex {b}")]
    OverlapB { e: EdgeId, f: EdgeId, b: BVertex },
    #[error("A-vertex {0} is unmatched")]
    Unmatched(AVertex),
}

/// A set of pairwise disjoint edges, indexed from both sides so that
/// blocking queries cost `O(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMatching {
    by_a: Vec<Option<EdgeId>>,
    by_b: Vec<Option<EdgeId>>,
    len: usize,
}

impl PartialMatching {
    pub fn new(h: &BipartiteHypergraph) -> Self {
        PartialMatching {
            by_a: alloc::vec![None; h.a_count()],
            by_b: alloc::vec![None; h.b_count()],
            len: 0,
        }
    }

    /// Builds a matching from edge ids, rejecting anything that is not a
    /// partial matching.
    pub fn from_edges(h: &BipartiteHypergraph, ids: &[EdgeId]) -> Result<Self, MatchingViolation> {
        verify_matching(h, ids, false)?;
        let mut m = PartialMatching::new(h);
        for &id in ids {
            m.place(h, id);
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, h: &BipartiteHypergraph, e: EdgeId) -> bool {
        self.by_a[h.edge(e).a] == Some(e)
    }

    /// The matching edge covering `a`, if any.
    pub fn edge_of_a(&self, a: AVertex) -> Option<EdgeId> {
        self.by_a[a]
    }

    pub fn edge_of_b(&self, b: BVertex) -> Option<EdgeId> {
        self.by_b[b]
    }

    pub fn is_matched(&self, a: AVertex) -> bool {
        self.by_a[a].is_some()
    }

    /// Member edge ids in increasing order.
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut ids: Vec<EdgeId> = self.by_a.iter().filter_map(|e| *e).collect();
        ids.sort_unstable();
        ids
    }

    /// `A(M)`, increasing.
    pub fn matched_vertices(&self) -> Vec<AVertex> {
        (0..self.by_a.len()).filter(|&a| self.by_a[a].is_some()).collect()
    }

    /// Matching edges sharing a `B`-vertex with `e`, increasing. A matching
    /// edge that only shares `e`'s `A`-vertex does not block it.
    pub fn blocking_edges(&self, h: &BipartiteHypergraph, e: EdgeId) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = h.edge(e).bs.iter().filter_map(|&b| self.by_b[b]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_immediately_addable(&self, h: &BipartiteHypergraph, e: EdgeId) -> bool {
        h.edge(e).bs.iter().all(|&b| self.by_b[b].is_none())
    }

    /// Adds an immediately addable edge for an unmatched `A`-vertex.
    pub fn insert(&mut self, h: &BipartiteHypergraph, e: EdgeId) -> Result<(), SwapError> {
        let edge = h.edge(e);
        if self.contains(h, e) {
            return Err(SwapError::AlreadyInMatching(e));
        }
        if self.by_a[edge.a].is_some() {
            return Err(SwapError::AlreadyMatched(edge.a));
        }
        if let Some(blocker) = self.first_blocker(h, e) {
            return Err(SwapError::NotAddable { edge: e, blocker });
        }
        self.place(h, e);
        self.debug_check(h);
        Ok(())
    }

    /// `M ← M \ {f_out} ∪ {e_in}` for two edges of the same `A`-vertex,
    /// where `e_in` is immediately addable. `A(M)` is unchanged.
    pub fn swap(&mut self, h: &BipartiteHypergraph, f_out: EdgeId, e_in: EdgeId) -> Result<(), SwapError> {
        if !self.contains(h, f_out) {
            return Err(SwapError::NotInMatching(f_out));
        }
        if self.contains(h, e_in) {
            return Err(SwapError::AlreadyInMatching(e_in));
        }
        if h.edge(f_out).a != h.edge(e_in).a {
            return Err(SwapError::AVertexMismatch {
                out: f_out,
                incoming: e_in,
            });
        }
        if let Some(blocker) = self.first_blocker(h, e_in) {
            return Err(SwapError::NotAddable { edge: e_in, blocker });
        }
        self.unplace(h, f_out);
        self.place(h, e_in);
        self.debug_check(h);
        Ok(())
    }

    fn first_blocker(&self, h: &BipartiteHypergraph, e: EdgeId) -> Option<EdgeId> {
        h.edge(e).bs.iter().find_map(|&b| self.by_b[b])
    }

    fn place(&mut self, h: &BipartiteHypergraph, e: EdgeId) {
        let edge = h.edge(e);
        self.by_a[edge.a] = Some(e);
        for &b in &edge.bs {
            self.by_b[b] = Some(e);
        }
        self.len += 1;
    }

    fn unplace(&mut self, h: &BipartiteHypergraph, e: EdgeId) {
        let edge = h.edge(e);
        self.by_a[edge.a] = None;
        for &b in &edge.bs {
            self.by_b[b] = None;
        }
        self.len -= 1;
    }

    #[cfg(debug_assertions)]
    fn debug_check(&self, h: &BipartiteHypergraph) {
        let ids = self.edges();
        debug_assert_eq!(ids.len(), self.len);
        debug_assert!(verify_matching(h, &ids, false).is_ok());
        let b_refs = self.by_b.iter().filter(|e| e.is_some()).count();
        debug_assert_eq!(b_refs, self.len * (h.r() - 1));
    }

    #[cfg(not(debug_assertions))]
    fn debug_check(&self, _h: &BipartiteHypergraph) {}
}

/// Checks that `ids` is a partial matching of `h` and, when
/// `require_perfect` is set, that it covers all of `A`.
pub fn verify_matching(
    h: &BipartiteHypergraph,
    ids: &[EdgeId],
    require_perfect: bool,
) -> Result<(), MatchingViolation> {
    let mut by_a: Vec<Option<EdgeId>> = alloc::vec![None; h.a_count()];
    let mut by_b: Vec<Option<EdgeId>> = alloc::vec![None; h.b_count()];
    for &id in ids {
        if id >= h.edge_count() {
            return Err(MatchingViolation::UnknownEdge(id));
        }
        let edge = h.edge(id);
        if let Some(prev) = by_a[edge.a] {
            if prev == id {
                return Err(MatchingViolation::RepeatedEdge(id));
            }
            return Err(MatchingViolation::OverlapA {
                e: prev,
                f: id,
                a: edge.a,
            });
        }
        by_a[edge.a] = Some(id);
        for &b in &edge.bs {
            if let Some(prev) = by_b[b] {
                return Err(MatchingViolation::OverlapB { e: prev, f: id, b });
            }
            by_b[b] = Some(id);
        }
    }
    if require_perfect {
        if let Some(a) = by_a.iter().position(Option::is_none) {
            return Err(MatchingViolation::Unmatched(a));
        }
    }
    Ok(())
}
