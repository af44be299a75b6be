//! The augmenting algorithm and its perfect-matching driver.

mod augment;
pub mod params;
pub mod signature;
pub mod trace;

use alloc::vec::Vec;

pub use augment::{augment, growth_check, AugmentOutcome, EngineError, SolveStats};
pub use params::{default_max_iterations, Overrides, ParamError, Parameters};
pub use signature::{lex_less, SignatureError, SignatureEvaluator, SignatureReport, SignatureVector};
pub use trace::{TraceEvent, TraceSink};

use crate::hypergraph::{BipartiteHypergraph, EdgeId};
use crate::matching::{verify_matching, PartialMatching};
use crate::oracles::WitnessCertificate;

/// Result of [`find_perfect_matching`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// Edge ids of a perfect matching, increasing.
    PerfectMatching(Vec<EdgeId>),
    Witness(WitnessCertificate),
}

/// Runs one augmentation per `A`-vertex, in vertex order, starting from the
/// empty matching. Stops at the first witness.
pub fn find_perfect_matching<S: TraceSink + ?Sized>(
    h: &BipartiteHypergraph,
    params: &Parameters,
    sink: &mut S,
) -> Result<(Solution, SolveStats), EngineError> {
    let mut m = PartialMatching::new(h);
    let mut stats = SolveStats::default();
    for a in 0..h.a_count() {
        if m.is_matched(a) {
            continue;
        }
        if let AugmentOutcome::Witness(cert) = augment(h, &mut m, a, params, &mut stats, sink)? {
            return Ok((Solution::Witness(cert), stats));
        }
    }
    let edges = m.edges();
    if let Err(v) = verify_matching(h, &edges, true) {
        return Err(EngineError::InvariantViolated(alloc::format!("final matching: {v:?}")));
    }
    Ok((Solution::PerfectMatching(edges), stats))
}
