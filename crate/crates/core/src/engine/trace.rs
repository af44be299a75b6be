use alloc::vec::Vec;

use super::signature::SignatureVector;
use crate::hypergraph::AVertex;

/// Progress events emitted by the solver, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    AugmentStart {
        root: AVertex,
    },
    /// `signature` is present when the sink asked for signatures or the
    /// solver runs with invariant checks.
    IterationStart {
        iteration: u64,
        depth: usize,
        signature: Option<SignatureVector>,
    },
    LayerBuilt {
        layer: usize,
        x: usize,
        y: usize,
    },
    GrowthCheck {
        layer: usize,
        passed: bool,
    },
    Collapse {
        layer: usize,
        swaps: usize,
    },
    SuperposedBuild {
        layer: usize,
        before: usize,
        after: usize,
        committed: bool,
    },
    IterationEnd {
        iteration: u64,
        depth: usize,
    },
    WitnessExtracted {
        s: usize,
        hitting_set: usize,
    },
    AugmentEnd {
        root: AVertex,
        matched: bool,
        iterations: u64,
    },
}

pub trait TraceSink {
    fn event(&mut self, event: TraceEvent);

    /// Whether signature vectors should be computed for this sink.
    fn wants_signatures(&self) -> bool {
        false
    }
}

/// Discards everything.
impl TraceSink for () {
    fn event(&mut self, _event: TraceEvent) {}
}

/// Collects every event, signatures included.
impl TraceSink for Vec<TraceEvent> {
    fn event(&mut self, event: TraceEvent) {
        self.push(event);
    }

    fn wants_signatures(&self) -> bool {
        true
    }
}

impl<S: TraceSink + ?Sized> TraceSink for &mut S {
    fn event(&mut self, event: TraceEvent) {
        (**self).event(event);
    }

    fn wants_signatures(&self) -> bool {
        (**self).wants_signatures()
    }
}
