//! Instance model: r-uniform bipartite hypergraphs with a given bipartition.
//!
//! Every edge holds exactly one `A`-vertex and `r - 1` distinct `B`-vertices.
//! Vertices are dense indices `0..a_count` and `0..b_count`; an edge's id is
//! its position in the edge list, and that position is the canonical order
//! used whenever the solver has to pick one edge among many.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

/// Index of a vertex on the `A` side.
pub type AVertex = usize;
/// Index of a vertex on the `B` side.
pub type BVertex = usize;
/// Position of an edge in [`BipartiteHypergraph::edges`].
pub type EdgeId = usize;

/// Reasons an instance is rejected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("uniformity r = {r} is below 2")]
    BadUniformity { r: usize },
    #[error("edge {edge}: expected {expected} B-vertices, found {found}")]
    NonUniformEdge {
        edge: EdgeId,
        expected: usize,
        found: usize,
    },
    #[error("edge {edge}: vertex index out of range")]
    IndexOutOfRange { edge: EdgeId },
    #[error("edge {edge}: B-vertex {b} appears twice")]
    DuplicateBVertex { edge: EdgeId, b: BVertex },
    #[error("edge {edge} duplicates edge {first}")]
    DuplicateEdge { edge: EdgeId, first: EdgeId },
    #[error("incidence index disagrees with the edge list at edge {edge}")]
    InconsistentIncidence { edge: EdgeId },
}

/// A hyperedge `{a} ∪ bs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub a: AVertex,
    /// Strictly increasing, length `r - 1`.
    pub bs: Vec<BVertex>,
}

impl Edge {
    /// True when the two edges share a `B`-vertex.
    pub fn meets_in_b(&self, other: &Edge) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.bs.len() && j < other.bs.len() {
            match self.bs[i].cmp(&other.bs[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// First shared `B`-vertex, if any.
    pub fn common_b(&self, other: &Edge) -> Option<BVertex> {
        self.bs.iter().copied().find(|b| other.bs.binary_search(b).is_ok())
    }
}

/// An r-uniform bipartite hypergraph `H = (A, B, E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteHypergraph {
    r: usize,
    a_count: usize,
    b_count: usize,
    edges: Vec<Edge>,
    by_a: Vec<Vec<EdgeId>>,
    by_b: Vec<Vec<EdgeId>>,
}

/// Checks raw edges `(a, bs)` against the instance rules without building
/// anything. `bs` may be given in any order. The first failing edge is
/// reported.
pub fn validate_instance(
    r: usize,
    a_count: usize,
    b_count: usize,
    edges: &[(AVertex, Vec<BVertex>)],
) -> Result<(), InstanceError> {
    if r < 2 {
        return Err(InstanceError::BadUniformity { r });
    }
    let mut seen: alloc::collections::BTreeMap<(AVertex, Vec<BVertex>), EdgeId> = alloc::collections::BTreeMap::new();
    for (id, (a, bs)) in edges.iter().enumerate() {
        if bs.len() != r - 1 {
            return Err(InstanceError::NonUniformEdge {
                edge: id,
                expected: r - 1,
                found: bs.len(),
            });
        }
        if *a >= a_count || bs.iter().any(|&b| b >= b_count) {
            return Err(InstanceError::IndexOutOfRange { edge: id });
        }
        let mut sorted = bs.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(InstanceError::DuplicateBVertex { edge: id, b: w[0] });
        }
        if let Some(&first) = seen.get(&(*a, sorted.clone())) {
            return Err(InstanceError::DuplicateEdge { edge: id, first });
        }
        seen.insert((*a, sorted), id);
    }
    Ok(())
}

impl BipartiteHypergraph {
    /// Builds a validated instance. `B`-vertex lists are sorted; edge order
    /// is kept as given.
    pub fn new(
        r: usize,
        a_count: usize,
        b_count: usize,
        edges: Vec<(AVertex, Vec<BVertex>)>,
    ) -> Result<Self, InstanceError> {
        validate_instance(r, a_count, b_count, &edges)?;
        let mut by_a = alloc::vec![Vec::new(); a_count];
        let mut by_b = alloc::vec![Vec::new(); b_count];
        let edges: Vec<Edge> = edges
            .into_iter()
            .enumerate()
            .map(|(id, (a, mut bs))| {
                bs.sort_unstable();
                by_a[a].push(id);
                for &b in &bs {
                    by_b[b].push(id);
                }
                Edge { id, a, bs }
            })
            .collect();
        Ok(BipartiteHypergraph {
            r,
            a_count,
            b_count,
            edges,
            by_a,
            by_b,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `n = |A|`.
    pub fn a_count(&self) -> usize {
        self.a_count
    }

    pub fn b_count(&self) -> usize {
        self.b_count
    }

    /// `m = |E|`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    /// Edges containing `a`, in edge order.
    pub fn edges_of_a(&self, a: AVertex) -> &[EdgeId] {
        &self.by_a[a]
    }

    /// Edges containing `b`, in edge order.
    pub fn edges_of_b(&self, b: BVertex) -> &[EdgeId] {
        &self.by_b[b]
    }

    /// `E_S`: every edge whose `A`-vertex lies in `s`, in edge order.
    /// Vertices outside `A` are ignored.
    pub fn incident_edges(&self, s: &[AVertex]) -> Vec<EdgeId> {
        let set: BTreeSet<AVertex> = s.iter().copied().filter(|&a| a < self.a_count).collect();
        let mut out: Vec<EdgeId> = set.iter().flat_map(|&a| self.by_a[a].iter().copied()).collect();
        out.sort_unstable();
        out
    }

    /// Re-checks every structural invariant, including the incidence
    /// indices.
    pub fn validate(&self) -> Result<(), InstanceError> {
        let raw: Vec<(AVertex, Vec<BVertex>)> = self.edges.iter().map(|e| (e.a, e.bs.clone())).collect();
        validate_instance(self.r, self.a_count, self.b_count, &raw)?;
        for (id, e) in self.edges.iter().enumerate() {
            if e.id != id || e.bs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(InstanceError::InconsistentIncidence { edge: id });
            }
        }
        let a_total: usize = self.by_a.iter().map(Vec::len).sum();
        let b_total: usize = self.by_b.iter().map(Vec::len).sum();
        if a_total != self.edges.len() || b_total != self.edges.len() * (self.r - 1) {
            return Err(InstanceError::InconsistentIncidence { edge: 0 });
        }
        for (a, ids) in self.by_a.iter().enumerate() {
            if let Some(&id) = ids.iter().find(|&&id| self.edges.get(id).map(|e| e.a) != Some(a)) {
                return Err(InstanceError::InconsistentIncidence { edge: id });
            }
        }
        for (b, ids) in self.by_b.iter().enumerate() {
            if let Some(&id) = ids
                .iter()
                .find(|&&id| self.edges.get(id).is_none_or(|e| e.bs.binary_search(&b).is_err()))
            {
                return Err(InstanceError::InconsistentIncidence { edge: id });
            }
        }
        Ok(())
    }
}
