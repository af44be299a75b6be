//! Layers, alternating trees and the layer-building subroutine.
//!
//! A layer `(X, Y)` holds pairwise `B`-disjoint non-matching edges `X` and
//! exactly the matching edges `Y` that block them. An alternating tree
//! stacks layers `L_1..L_ℓ` over a root `A`-vertex so that every layer's
//! edges grow out of the `A`-vertices of the blocking edges one level down,
//! and no two layers share a `B`-vertex.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::hypergraph::{AVertex, BVertex, BipartiteHypergraph, EdgeId};
use crate::matching::PartialMatching;

/// One layer `(X_i, Y_i)`. Both lists are kept sorted by edge id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Layer {
    pub x: Vec<EdgeId>,
    pub y: Vec<EdgeId>,
}

impl Layer {
    pub fn new(mut x: Vec<EdgeId>, mut y: Vec<EdgeId>) -> Self {
        x.sort_unstable();
        y.sort_unstable();
        Layer { x, y }
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty() && self.y.is_empty()
    }

    fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.x.iter().chain(self.y.iter()).copied()
    }
}

/// The root layer `L_0`: a single unmatched `A`-vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootLayer {
    pub root: AVertex,
}

/// Multiset of `B`-vertices covered by a collection of edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occupancy {
    count: Vec<u32>,
}

impl Occupancy {
    pub fn new(b_count: usize) -> Self {
        Occupancy {
            count: alloc::vec![0; b_count],
        }
    }

    /// Occupancy of `B(X ∪ Y)` over the given layers.
    pub fn of_layers<'a>(h: &BipartiteHypergraph, layers: impl IntoIterator<Item = &'a Layer>) -> Self {
        let mut occ = Occupancy::new(h.b_count());
        for layer in layers {
            for e in layer.edges() {
                occ.add_edge(h, e);
            }
        }
        occ
    }

    pub fn contains(&self, b: BVertex) -> bool {
        self.count[b] > 0
    }

    pub fn add_edge(&mut self, h: &BipartiteHypergraph, e: EdgeId) {
        for &b in &h.edge(e).bs {
            self.count[b] += 1;
        }
    }

    pub fn remove_edge(&mut self, h: &BipartiteHypergraph, e: EdgeId) {
        for &b in &h.edge(e).bs {
            debug_assert!(self.count[b] > 0);
            self.count[b] -= 1;
        }
    }

    /// Occupied vertices, increasing.
    pub fn vertices(&self) -> Vec<BVertex> {
        (0..self.count.len()).filter(|&b| self.count[b] > 0).collect()
    }

    /// True when the occupied vertex sets agree (multiplicities ignored).
    pub fn same_support(&self, other: &Occupancy) -> bool {
        self.count.len() == other.count.len() && self.count.iter().zip(&other.count).all(|(a, b)| (*a > 0) == (*b > 0))
    }
}

/// An alternating tree `(L_0, L_1, …, L_ℓ)` with incrementally maintained
/// degree counters and `B`-occupancy.
#[derive(Debug, Clone)]
pub struct AlternatingTree {
    root: RootLayer,
    layers: Vec<Layer>,
    u_bound: usize,
    degree: Vec<u32>,
    occupancy: Occupancy,
}

impl AlternatingTree {
    /// A tree holding only the root layer.
    pub fn new(h: &BipartiteHypergraph, root: AVertex, u_bound: usize) -> Self {
        AlternatingTree {
            root: RootLayer { root },
            layers: Vec::new(),
            u_bound,
            degree: alloc::vec![0; h.a_count()],
            occupancy: Occupancy::new(h.b_count()),
        }
    }

    /// Assembles a tree from explicit layers without checking anything.
    /// Use [`validate_tree`] to find out whether the result is legal.
    pub fn from_parts(h: &BipartiteHypergraph, root: AVertex, u_bound: usize, layers: Vec<Layer>) -> Self {
        let mut tree = AlternatingTree::new(h, root, u_bound);
        for layer in layers {
            tree.push_layer(h, layer);
        }
        tree
    }

    pub fn root(&self) -> AVertex {
        self.root.root
    }

    pub fn u_bound(&self) -> usize {
        self.u_bound
    }

    /// `ℓ`, the index of the last layer.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Layer `L_i` for `1 ≤ i ≤ ℓ`.
    pub fn layer(&self, i: usize) -> &Layer {
        &self.layers[i - 1]
    }

    /// `L_1..L_ℓ`.
    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn occupancy(&self) -> &Occupancy {
        &self.occupancy
    }

    /// Number of edges of `(X_{≤ℓ} ∪ Y_{≤ℓ}) \ Y_0` containing `a`.
    pub fn tree_degree(&self, a: AVertex) -> usize {
        self.degree[a] as usize
    }

    /// `A(Y_{i−1})`, increasing; `{root}` for `i = 1`.
    pub fn parent_set(&self, h: &BipartiteHypergraph, i: usize) -> Vec<AVertex> {
        if i <= 1 {
            return alloc::vec![self.root.root];
        }
        let mut out: Vec<AVertex> = self.layer(i - 1).y.iter().map(|&f| h.edge(f).a).collect();
        out.sort_unstable();
        out
    }

    /// `|Y_{≤i}|`, counting `Y_0 = {root}` as one.
    pub fn y_total(&self, i: usize) -> usize {
        1 + self.layers[..i].iter().map(|l| l.y.len()).sum::<usize>()
    }

    /// `|X_{≤i}|`.
    pub fn x_total(&self, i: usize) -> usize {
        self.layers[..i].iter().map(|l| l.x.len()).sum()
    }

    pub fn push_layer(&mut self, h: &BipartiteHypergraph, layer: Layer) {
        for e in layer.edges() {
            self.track(h, e);
        }
        self.layers.push(layer);
    }

    /// Discards `L_ℓ`.
    pub fn pop_layer(&mut self, h: &BipartiteHypergraph) -> Option<Layer> {
        let layer = self.layers.pop()?;
        for e in layer.edges() {
            self.untrack(h, e);
        }
        Some(layer)
    }

    /// Removes the blocking edge `f` from `Y_i`. Returns false if absent.
    pub fn remove_y(&mut self, h: &BipartiteHypergraph, i: usize, f: EdgeId) -> bool {
        let y = &mut self.layers[i - 1].y;
        match y.binary_search(&f) {
            Ok(pos) => {
                y.remove(pos);
                self.untrack(h, f);
                true
            }
            Err(_) => false,
        }
    }

    /// Replaces `L_i` by a superset of itself (a committed rebuild).
    pub fn grow_layer(&mut self, h: &BipartiteHypergraph, i: usize, grown: Layer) {
        let old = core::mem::take(&mut self.layers[i - 1]);
        debug_assert!(old.x.iter().all(|e| grown.x.binary_search(e).is_ok()));
        debug_assert!(old.y.iter().all(|e| grown.y.binary_search(e).is_ok()));
        for &e in grown.x.iter().filter(|e| old.x.binary_search(e).is_err()) {
            self.track(h, e);
        }
        for &e in grown.y.iter().filter(|e| old.y.binary_search(e).is_err()) {
            self.track(h, e);
        }
        self.layers[i - 1] = grown;
    }

    /// Count of `X`-edges per `A`-vertex over layers `1..=upto`.
    pub fn x_degrees(&self, h: &BipartiteHypergraph, upto: usize) -> BTreeMap<AVertex, usize> {
        let mut out = BTreeMap::new();
        for layer in &self.layers[..upto] {
            for &e in &layer.x {
                *out.entry(h.edge(e).a).or_insert(0) += 1;
            }
        }
        out
    }

    fn track(&mut self, h: &BipartiteHypergraph, e: EdgeId) {
        self.degree[h.edge(e).a] += 1;
        self.occupancy.add_edge(h, e);
    }

    fn untrack(&mut self, h: &BipartiteHypergraph, e: EdgeId) {
        self.degree[h.edge(e).a] -= 1;
        self.occupancy.remove_edge(h, e);
    }
}

/// Grows a layer from the `A`-vertices of `parent` by repeatedly adding
/// addable edges together with their blocking edges.
///
/// `base` is the occupancy of the tree the layer grows on. An edge for
/// `ā ∈ parent` is addable when `ā` has fewer than `u_bound` edges in the
/// layer's `X` and the edge avoids both `base` and `B(X ∪ Y)` of the layer.
pub struct LayerBuilder<'a> {
    h: &'a BipartiteHypergraph,
    m: &'a PartialMatching,
    base: &'a Occupancy,
    parent: &'a [AVertex],
    u_bound: usize,
    layer: Layer,
    overlay: BTreeSet<BVertex>,
    x_count: BTreeMap<AVertex, usize>,
}

impl<'a> LayerBuilder<'a> {
    pub fn new(
        h: &'a BipartiteHypergraph,
        m: &'a PartialMatching,
        base: &'a Occupancy,
        parent: &'a [AVertex],
        start: Layer,
        u_bound: usize,
    ) -> Self {
        let mut overlay = BTreeSet::new();
        let mut x_count = BTreeMap::new();
        for e in start.edges() {
            overlay.extend(h.edge(e).bs.iter().copied());
        }
        for &e in &start.x {
            *x_count.entry(h.edge(e).a).or_insert(0) += 1;
        }
        LayerBuilder {
            h,
            m,
            base,
            parent,
            u_bound,
            layer: start,
            overlay,
            x_count,
        }
    }

    fn has_room(&self, a: AVertex) -> bool {
        self.x_count.get(&a).copied().unwrap_or(0) < self.u_bound
    }

    fn is_addable(&self, e: EdgeId) -> bool {
        !self.m.contains(self.h, e)
            && self
                .h
                .edge(e)
                .bs
                .iter()
                .all(|&b| !self.base.contains(b) && !self.overlay.contains(&b))
    }

    /// The least `(ā, e)` (vertex order, then edge order) that could be
    /// added next.
    pub fn find_addable_edge(&self) -> Option<(AVertex, EdgeId)> {
        self.parent.iter().copied().filter(|&a| self.has_room(a)).find_map(|a| {
            self.h
                .edges_of_a(a)
                .iter()
                .copied()
                .find(|&e| self.is_addable(e))
                .map(|e| (a, e))
        })
    }

    /// `X ← X ∪ {e}`, `Y ← Y ∪ blockers(e)`.
    pub fn add_edge(&mut self, e: EdgeId) {
        let edge = self.h.edge(e);
        insert_sorted(&mut self.layer.x, e);
        *self.x_count.entry(edge.a).or_insert(0) += 1;
        self.overlay.extend(edge.bs.iter().copied());
        for f in self.m.blocking_edges(self.h, e) {
            if insert_sorted(&mut self.layer.y, f) {
                self.overlay.extend(self.h.edge(f).bs.iter().copied());
            }
        }
    }

    pub fn layer(&self) -> &Layer {
        &self.layer
    }

    /// Runs the add loop to exhaustion.
    ///
    /// Addability only ever turns false during a build (occupancy and the
    /// per-vertex counts grow), so the successive least addable pairs appear
    /// in increasing order and one ordered sweep picks exactly the same
    /// edges as re-querying [`Self::find_addable_edge`] after every addition.
    pub fn finish(mut self) -> Layer {
        for &a in self.parent {
            for &e in self.h.edges_of_a(a) {
                if !self.has_room(a) {
                    break;
                }
                if self.is_addable(e) {
                    self.add_edge(e);
                }
            }
        }
        self.layer
    }
}

fn insert_sorted(v: &mut Vec<EdgeId>, e: EdgeId) -> bool {
    match v.binary_search(&e) {
        Ok(_) => false,
        Err(pos) => {
            v.insert(pos, e);
            true
        }
    }
}

/// `BuildLayer`: grows `start` from `parent` against the occupancy `base`.
pub fn build_layer(
    h: &BipartiteHypergraph,
    m: &PartialMatching,
    base: &Occupancy,
    parent: &[AVertex],
    start: Layer,
    u_bound: usize,
) -> Layer {
    LayerBuilder::new(h, m, base, parent, start, u_bound).finish()
}

/// The least addable pair for a layer under construction on top of `tree`.
pub fn find_addable_edge(
    h: &BipartiteHypergraph,
    m: &PartialMatching,
    tree: &AlternatingTree,
    parent: &[AVertex],
    under_construction: &Layer,
    u_bound: usize,
) -> Option<(AVertex, EdgeId)> {
    LayerBuilder::new(h, m, tree.occupancy(), parent, under_construction.clone(), u_bound).find_addable_edge()
}

/// First broken rule found by [`validate_tree`]. Layer indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeViolation {
    #[error("root {0} is out of range or matched")]
    RootMatched(AVertex),
    #[error("layer {layer}: edge {edge} of X is in the matching")]
    XInMatching { layer: usize, edge: EdgeId },
    #[error("layer {layer}: X edges {e} and {f} share a B-vertex")]
    XNotDisjoint { layer: usize, e: EdgeId, f: EdgeId },
    #[error("layer {layer}: list is not strictly sorted")]
    Unsorted { layer: usize },
    #[error("layer {layer}: Y edge {edge} is not in the matching")]
    YNotInMatching { layer: usize, edge: EdgeId },
    #[error("layer {layer}: blocking edge {edge} of X is missing from Y")]
    MissingBlocker { layer: usize, edge: EdgeId },
    #[error("layer {layer}: Y edge {edge} blocks no X edge")]
    YIntersectsNoX { layer: usize, edge: EdgeId },
    #[error("layer {layer}: Y edge {edge} intersects more than one X edge")]
    YIntersectsMultipleX { layer: usize, edge: EdgeId },
    #[error("layer {layer}: X edge {edge} does not grow from A(Y) of the layer below")]
    ParentMismatch { layer: usize, edge: EdgeId },
    #[error("layers {first} and {second} share B-vertex {b}")]
    CrossLayerBOverlap { first: usize, second: usize, b: BVertex },
    #[error("A-vertex {a} lies in more than one blocking edge")]
    RepeatedBlockingVertex { a: AVertex },
    #[error("A-vertex {a} has {count} non-blocking edges, above the degree bound")]
    DegreeBound { a: AVertex, count: usize },
    #[error("A-vertex {a} has X edges in more than one layer")]
    SplitChildren { a: AVertex },
    #[error("maintained counters disagree with a recount")]
    CounterMismatch,
}

/// Re-checks every layer and tree rule from scratch against `m`.
pub fn validate_tree(
    h: &BipartiteHypergraph,
    m: &PartialMatching,
    tree: &AlternatingTree,
) -> Result<(), TreeViolation> {
    let root = tree.root();
    if root >= h.a_count() || m.is_matched(root) {
        return Err(TreeViolation::RootMatched(root));
    }
    for (idx, layer) in tree.layers().iter().enumerate() {
        check_layer(h, m, idx + 1, layer)?;
    }
    for i in 1..=tree.depth() {
        let parents = tree.parent_set(h, i);
        if let Some(&e) = tree
            .layer(i)
            .x
            .iter()
            .find(|&&e| parents.binary_search(&h.edge(e).a).is_err())
        {
            return Err(TreeViolation::ParentMismatch { layer: i, edge: e });
        }
    }
    // cross-layer B-disjointness
    let mut owner: BTreeMap<BVertex, usize> = BTreeMap::new();
    for (idx, layer) in tree.layers().iter().enumerate() {
        let mut bs: BTreeSet<BVertex> = BTreeSet::new();
        for e in layer.edges() {
            bs.extend(h.edge(e).bs.iter().copied());
        }
        for b in bs {
            if let Some(&first) = owner.get(&b) {
                return Err(TreeViolation::CrossLayerBOverlap {
                    first,
                    second: idx + 1,
                    b,
                });
            }
            owner.insert(b, idx + 1);
        }
    }
    // degrees
    let mut blocking_owner: BTreeSet<AVertex> = BTreeSet::new();
    let mut x_layer: BTreeMap<AVertex, (usize, usize)> = BTreeMap::new();
    let mut degree = alloc::vec![0u32; h.a_count()];
    for (idx, layer) in tree.layers().iter().enumerate() {
        for &f in &layer.y {
            let a = h.edge(f).a;
            if a == root || !blocking_owner.insert(a) {
                return Err(TreeViolation::RepeatedBlockingVertex { a });
            }
            degree[a] += 1;
        }
        for &e in &layer.x {
            let a = h.edge(e).a;
            let entry = x_layer.entry(a).or_insert((idx + 1, 0));
            if entry.0 != idx + 1 {
                return Err(TreeViolation::SplitChildren { a });
            }
            entry.1 += 1;
            degree[a] += 1;
        }
    }
    for (&a, &(_, count)) in &x_layer {
        if count > tree.u_bound() {
            return Err(TreeViolation::DegreeBound { a, count });
        }
    }
    let recount = Occupancy::of_layers(h, tree.layers());
    let degrees_ok = (0..h.a_count()).all(|a| degree[a] as usize == tree.tree_degree(a));
    if !degrees_ok || recount != tree.occupancy {
        return Err(TreeViolation::CounterMismatch);
    }
    Ok(())
}

fn check_layer(h: &BipartiteHypergraph, m: &PartialMatching, i: usize, layer: &Layer) -> Result<(), TreeViolation> {
    if layer.x.windows(2).any(|w| w[0] >= w[1]) || layer.y.windows(2).any(|w| w[0] >= w[1]) {
        return Err(TreeViolation::Unsorted { layer: i });
    }
    for (k, &e) in layer.x.iter().enumerate() {
        if m.contains(h, e) {
            return Err(TreeViolation::XInMatching { layer: i, edge: e });
        }
        if let Some(&f) = layer.x[k + 1..].iter().find(|&&f| h.edge(e).meets_in_b(h.edge(f))) {
            return Err(TreeViolation::XNotDisjoint { layer: i, e, f });
        }
    }
    for &f in &layer.y {
        if !m.contains(h, f) {
            return Err(TreeViolation::YNotInMatching { layer: i, edge: f });
        }
    }
    for &e in &layer.x {
        if let Some(f) = m
            .blocking_edges(h, e)
            .into_iter()
            .find(|f| layer.y.binary_search(f).is_err())
        {
            return Err(TreeViolation::MissingBlocker { layer: i, edge: f });
        }
    }
    for &f in &layer.y {
        let hits = layer.x.iter().filter(|&&e| h.edge(e).meets_in_b(h.edge(f))).count();
        match hits {
            0 => return Err(TreeViolation::YIntersectsNoX { layer: i, edge: f }),
            1 => {}
            _ => return Err(TreeViolation::YIntersectsMultipleX { layer: i, edge: f }),
        }
    }
    Ok(())
}
