//! One augmentation: grow an alternating tree from an unmatched root until
//! the root gets matched or a layer fails to grow enough, in which case the
//! tree yields a witness set.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

use super::params::{depth_within_bound, Parameters};
use super::signature::{SignatureError, SignatureEvaluator, SignatureVector};
use super::trace::{TraceEvent, TraceSink};
use crate::hypergraph::{AVertex, BVertex, BipartiteHypergraph, EdgeId};
use crate::matching::{PartialMatching, SwapError};
use crate::oracles::{verify_witness, WitnessCertificate, WitnessViolation};
use crate::ratio::{exceeds, int};
use crate::tree::{build_layer, validate_tree, AlternatingTree, Layer, Occupancy};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("iteration cap of {cap} exceeded")]
    IterationCapExceeded { cap: u64 },
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("extracted certificate is invalid: {0}")]
    CertificateInvalid(WitnessViolation),
    #[error("swap failed: {0}")]
    Swap(#[from] SwapError),
    #[error("signature: {0}")]
    Signature(#[from] SignatureError),
    #[error("A-vertex {0} is already matched")]
    RootAlreadyMatched(AVertex),
}

/// Counters accumulated over one or more augmentations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub iterations: u64,
    pub max_layers: usize,
    /// Matching updates made by collapses, each final root insertion included.
    pub swaps: u64,
    /// Layer builds, superposed ones included.
    pub build_ops: u64,
    pub collapses: u64,
    pub commits: u64,
    pub rejects: u64,
    pub signature_rechecks: u64,
    pub signature_unresolved: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AugmentOutcome {
    /// The root is now matched; the matching was updated in place.
    Matched,
    Witness(WitnessCertificate),
}

/// `|Y_{≤ℓ}|` against the size of the freshly built `X_{ℓ+1}`.
///
/// Below the small-tree threshold any nonempty layer passes; from the
/// threshold on the layer must exceed `δ·|Y_{≤ℓ}|`.
pub fn growth_check(params: &Parameters, y_total: usize, x_new: usize) -> bool {
    if y_total < params.small_tree_threshold {
        x_new >= 1
    } else {
        exceeds(x_new, &params.delta, y_total)
    }
}

/// Augments `m` by the unmatched vertex `a0`.
pub fn augment<S: TraceSink + ?Sized>(
    h: &BipartiteHypergraph,
    m: &mut PartialMatching,
    a0: AVertex,
    params: &Parameters,
    stats: &mut SolveStats,
    sink: &mut S,
) -> Result<AugmentOutcome, EngineError> {
    if m.is_matched(a0) {
        return Err(EngineError::RootAlreadyMatched(a0));
    }
    let signatures = params.check_invariants || sink.wants_signatures();
    let mut run = Run {
        h,
        m,
        params,
        tree: AlternatingTree::new(h, a0, params.u),
        evaluator: signatures.then(|| SignatureEvaluator::new(params)),
        previous: None,
        stats,
        sink,
    };
    run.sink.event(TraceEvent::AugmentStart { root: a0 });
    let mut iterations = 0u64;
    let outcome = loop {
        if iterations == params.max_iterations {
            return Err(EngineError::IterationCapExceeded {
                cap: params.max_iterations,
            });
        }
        iterations += 1;
        run.stats.iterations += 1;
        let signature = run.boundary()?;
        run.sink.event(TraceEvent::IterationStart {
            iteration: iterations,
            depth: run.tree.depth(),
            signature,
        });
        if let Some(cert) = run.build_phase()? {
            break AugmentOutcome::Witness(cert);
        }
        if run.collapse_phase()? {
            break AugmentOutcome::Matched;
        }
        run.sink.event(TraceEvent::IterationEnd {
            iteration: iterations,
            depth: run.tree.depth(),
        });
    };
    run.sink.event(TraceEvent::AugmentEnd {
        root: a0,
        matched: matches!(outcome, AugmentOutcome::Matched),
        iterations,
    });
    Ok(outcome)
}

struct Run<'a, S: TraceSink + ?Sized> {
    h: &'a BipartiteHypergraph,
    m: &'a mut PartialMatching,
    params: &'a Parameters,
    tree: AlternatingTree,
    evaluator: Option<SignatureEvaluator>,
    /// Signature at the start of the previous iteration.
    previous: Option<SignatureVector>,
    stats: &'a mut SolveStats,
    sink: &'a mut S,
}

impl<S: TraceSink + ?Sized> Run<'_, S> {
    /// Work done at the start of every iteration: the signature and, in
    /// checking mode, the structural and progress invariants.
    fn boundary(&mut self) -> Result<Option<SignatureVector>, EngineError> {
        if self.params.check_invariants {
            self.check_invariants()?;
        }
        let Some(evaluator) = self.evaluator.as_mut() else {
            return Ok(None);
        };
        let report = evaluator.evaluate(self.tree.layers())?;
        self.stats.signature_rechecks += u64::from(report.rechecks);
        self.stats.signature_unresolved += u64::from(report.unresolved);
        let current = report.vector;
        if self.params.check_invariants {
            if !current.has_sign_pattern() {
                return violated(format!("signature {current} breaks the sign pattern"));
            }
            if !current.is_abs_monotone() {
                return violated(format!("signature {current} is not monotone in absolute value"));
            }
            if let Some(prev) = &self.previous {
                if current >= *prev {
                    return violated(format!("signature did not decrease: {prev} then {current}"));
                }
            }
        }
        self.previous = Some(current.clone());
        Ok(Some(current))
    }

    fn check_invariants(&mut self) -> Result<(), EngineError> {
        let (h, params) = (self.h, self.params);
        if let Err(v) = validate_tree(h, self.m, &self.tree) {
            return violated(format!("tree: {v:?}"));
        }
        let depth = self.tree.depth();
        for i in 1..=depth {
            let layer = self.tree.layer(i);
            if self.collapsible(layer) {
                return violated(format!("layer {i} is collapsible at an iteration start"));
            }
            // |Y_i| ≥ (1 − μ)|X_i|
            let floor = (BigRational::one() - &params.mu) * int(layer.x.len());
            if int(layer.y.len()) < floor {
                return violated(format!("layer {i}: |Y| = {} below (1-mu)|X|", layer.y.len()));
            }
            let rebuilt = self.prefix_build(i);
            if !below_growth(params, rebuilt.x.len(), layer.x.len()) {
                return violated(format!(
                    "layer {i}: superposed build reaches {} from {}",
                    rebuilt.x.len(),
                    layer.x.len()
                ));
            }
            if !exceeds(layer.x.len(), &params.delta, self.tree.y_total(i - 1)) {
                return violated(format!("layer {i}: |X| not above delta |Y_<{i}|"));
            }
        }
        if !depth_within_bound(&params.gamma, depth, h.a_count()) {
            return violated(format!("depth {depth} exceeds the logarithmic bound"));
        }
        Ok(())
    }

    /// Builds `L_{ℓ+1}`. Returns a certificate if it does not grow enough.
    fn build_phase(&mut self) -> Result<Option<WitnessCertificate>, EngineError> {
        let h = self.h;
        let next = self.tree.depth() + 1;
        let parent = self.tree.parent_set(h, next);
        let layer = build_layer(
            h,
            self.m,
            self.tree.occupancy(),
            &parent,
            Layer::default(),
            self.params.u,
        );
        self.stats.build_ops += 1;
        self.sink.event(TraceEvent::LayerBuilt {
            layer: next,
            x: layer.x.len(),
            y: layer.y.len(),
        });
        let passed = growth_check(self.params, self.tree.y_total(next - 1), layer.x.len());
        self.sink.event(TraceEvent::GrowthCheck { layer: next, passed });
        self.tree.push_layer(h, layer);
        self.stats.max_layers = self.stats.max_layers.max(self.tree.depth());
        if passed {
            return Ok(None);
        }
        let cert = self.extract_witness()?;
        self.sink.event(TraceEvent::WitnessExtracted {
            s: cert.s.len(),
            hitting_set: cert.hitting_set.len(),
        });
        Ok(Some(cert))
    }

    /// Collapses the last layer while it is collapsible. Returns true once
    /// the root is matched.
    fn collapse_phase(&mut self) -> Result<bool, EngineError> {
        while let Some(last) = self.tree.layers().last() {
            if !self.collapsible(last) {
                break;
            }
            if self.collapse_layer()? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn collapsible(&self, layer: &Layer) -> bool {
        let addable = layer
            .x
            .iter()
            .filter(|&&e| self.m.is_immediately_addable(self.h, e))
            .count();
        exceeds(addable, &self.params.mu, layer.x.len())
    }

    /// Collapses `L_ℓ`: swaps addable edges in for their parents' matching
    /// edges, discards the layer and retries growing the one below.
    fn collapse_layer(&mut self) -> Result<bool, EngineError> {
        let h = self.h;
        let depth = self.tree.depth();
        self.stats.collapses += 1;
        let x = self.tree.layer(depth).x.clone();
        if depth == 1 {
            let root = self.tree.root();
            let e = x
                .iter()
                .copied()
                .find(|&e| h.edge(e).a == root && self.m.is_immediately_addable(h, e))
                .expect("collapsible root layer has an addable edge");
            self.m.insert(h, e)?;
            self.stats.swaps += 1;
            self.tree.pop_layer(h);
            self.sink.event(TraceEvent::Collapse { layer: 1, swaps: 1 });
            return Ok(true);
        }
        let parents = self.tree.layer(depth - 1).y.clone();
        let mut swaps = 0;
        for f in parents {
            let a = h.edge(f).a;
            let incoming = x
                .iter()
                .copied()
                .find(|&e| h.edge(e).a == a && self.m.is_immediately_addable(h, e));
            if let Some(e) = incoming {
                self.m.swap(h, f, e)?;
                self.tree.remove_y(h, depth - 1, f);
                swaps += 1;
            }
        }
        self.stats.swaps += swaps as u64;
        self.tree.pop_layer(h);
        self.sink.event(TraceEvent::Collapse { layer: depth, swaps });
        self.superposed_build(depth - 1);
        Ok(false)
    }

    /// Rebuilds `L_i` (the last layer) on top of itself and keeps the result
    /// only if `X_i` grew by a factor of at least `1 + μ`.
    fn superposed_build(&mut self, i: usize) {
        debug_assert_eq!(i, self.tree.depth());
        self.stats.build_ops += 1;
        let rebuilt = self.prefix_build(i);
        let before = self.tree.layer(i).x.len();
        let after = rebuilt.x.len();
        let committed = !below_growth(self.params, after, before);
        if committed {
            self.tree.grow_layer(self.h, i, rebuilt);
            self.stats.commits += 1;
        } else {
            self.stats.rejects += 1;
        }
        self.sink.event(TraceEvent::SuperposedBuild {
            layer: i,
            before,
            after,
            committed,
        });
    }

    /// `BuildLayer((L_0..L_i), X_i, Y_i)`, ignoring layers above `i`.
    fn prefix_build(&self, i: usize) -> Layer {
        let h = self.h;
        let parent = self.tree.parent_set(h, i);
        let start = self.tree.layer(i).clone();
        if i == self.tree.depth() {
            build_layer(h, self.m, self.tree.occupancy(), &parent, start, self.params.u)
        } else {
            let base = Occupancy::of_layers(h, &self.tree.layers()[..i]);
            build_layer(h, self.m, &base, &parent, start, self.params.u)
        }
    }

    /// Packages the failed growth of `L_{ℓ+1}` (the tree's last layer) as a
    /// certificate.
    ///
    /// `S` holds the root and the `A`-vertices of `Y_{≤ℓ}`, minus vertices
    /// saturated at `U` edges and minus every vertex that a superposed
    /// rebuild of some `L_i` could still extend. The tree's `B`-vertices plus
    /// those touched by the rebuilds hit every edge of `E_S`.
    fn extract_witness(&mut self) -> Result<WitnessCertificate, EngineError> {
        let h = self.h;
        let depth = self.tree.depth();
        let ell = depth - 1;
        let mut extra_b: BTreeSet<BVertex> = BTreeSet::new();
        let mut extendable: BTreeSet<AVertex> = BTreeSet::new();
        for i in 1..=ell {
            let old = self.tree.layer(i).clone();
            self.stats.build_ops += 1;
            let rebuilt = self.prefix_build(i);
            for e in new_edges(&rebuilt.x, &old.x) {
                extendable.insert(h.edge(e).a);
                extra_b.extend(h.edge(e).bs.iter().copied());
            }
            for f in new_edges(&rebuilt.y, &old.y) {
                extra_b.extend(h.edge(f).bs.iter().copied());
            }
        }
        let saturated = self.tree.x_degrees(h, depth);
        let mut s: Vec<AVertex> = Vec::new();
        for i in 1..=depth {
            s.extend(self.tree.parent_set(h, i));
        }
        s.sort_unstable();
        s.dedup();
        s.retain(|a| saturated.get(a).copied().unwrap_or(0) < self.params.u && !extendable.contains(a));
        let mut hitting_set = self.tree.occupancy().vertices();
        hitting_set.extend(extra_b);
        let cert = WitnessCertificate::new(h, s, hitting_set, self.params.epsilon.clone());
        verify_witness(h, &cert).map_err(EngineError::CertificateInvalid)?;
        Ok(cert)
    }
}

fn violated<T>(detail: String) -> Result<T, EngineError> {
    Err(EngineError::InvariantViolated(detail))
}

/// `after < (1 + μ)·before`.
fn below_growth(params: &Parameters, after: usize, before: usize) -> bool {
    int(after) < (BigRational::one() + &params.mu) * int(before)
}

fn new_edges<'a>(now: &'a [EdgeId], old: &'a [EdgeId]) -> impl Iterator<Item = EdgeId> + 'a {
    now.iter().copied().filter(move |e| old.binary_search(e).is_err())
}
