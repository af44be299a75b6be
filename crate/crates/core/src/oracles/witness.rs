use alloc::vec::Vec;

use num_rational::BigRational;

use crate::hypergraph::{AVertex, BVertex, BipartiteHypergraph, EdgeId};
use crate::ratio::{haxell_bound, int};

/// A refutation of the strengthened condition: a set `S ⊆ A` together with
/// an explicit hitting set of `E_S` no larger than `(2r − 3 + ε)(|S| − 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCertificate {
    /// Increasing.
    pub s: Vec<AVertex>,
    /// Increasing.
    pub hitting_set: Vec<BVertex>,
    pub epsilon: BigRational,
    /// `(2r − 3 + ε)(|s| − 1)`.
    pub bound: BigRational,
}

impl WitnessCertificate {
    pub fn new(
        h: &BipartiteHypergraph,
        mut s: Vec<AVertex>,
        mut hitting_set: Vec<BVertex>,
        epsilon: BigRational,
    ) -> Self {
        s.sort_unstable();
        s.dedup();
        hitting_set.sort_unstable();
        hitting_set.dedup();
        let bound = haxell_bound(h.r(), &epsilon, s.len());
        WitnessCertificate {
            s,
            hitting_set,
            epsilon,
            bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessViolation {
    #[error("A-vertex {0} out of range or repeated")]
    BadAVertex(AVertex),
    #[error("B-vertex {0} out of range or repeated")]
    BadBVertex(BVertex),
    #[error("stated bound does not equal (2r-3+eps)(|S|-1)")]
    BoundMismatch,
    #[error("edge {0} of E_S is not hit")]
    UnhitEdge(EdgeId),
    #[error("hitting set has {size} vertices, above the bound")]
    SizeExceedsBound { size: usize },
}

/// Polynomial-time check of a certificate: the hitting set must hit every
/// edge of `E_S`, and its size must not exceed the bound (exact arithmetic).
pub fn verify_witness(h: &BipartiteHypergraph, cert: &WitnessCertificate) -> Result<(), WitnessViolation> {
    let mut in_s = alloc::vec![false; h.a_count()];
    for &a in &cert.s {
        if a >= h.a_count() || in_s[a] {
            return Err(WitnessViolation::BadAVertex(a));
        }
        in_s[a] = true;
    }
    let mut in_hs = alloc::vec![false; h.b_count()];
    for &b in &cert.hitting_set {
        if b >= h.b_count() || in_hs[b] {
            return Err(WitnessViolation::BadBVertex(b));
        }
        in_hs[b] = true;
    }
    let bound = haxell_bound(h.r(), &cert.epsilon, cert.s.len());
    if bound != cert.bound {
        return Err(WitnessViolation::BoundMismatch);
    }
    for e in h.incident_edges(&cert.s) {
        if !h.edge(e).bs.iter().any(|&b| in_hs[b]) {
            return Err(WitnessViolation::UnhitEdge(e));
        }
    }
    if int(cert.hitting_set.len()) > bound {
        return Err(WitnessViolation::SizeExceedsBound {
            size: cert.hitting_set.len(),
        });
    }
    Ok(())
}
