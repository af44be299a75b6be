//! Perfect matchings in `r`-uniform bipartite hypergraphs.
//!
//! Every edge has one vertex in `A` and `r − 1` vertices in `B`. When every
//! `S ⊆ A` satisfies `τ(E_S) > (2r − 3 + ε)(|S| − 1)` the solver in
//! [`engine`] finds a perfect matching in polynomial time. Otherwise it may
//! instead return a set `S` together with a hitting set of `E_S` that is
//! small enough to refute the condition.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod engine;
pub mod hypergraph;
pub mod instances;
pub mod matching;
pub mod oracles;
pub mod ratio;
pub mod tree;

pub use engine::{find_perfect_matching, Parameters, Solution, SolveStats};
pub use hypergraph::{validate_instance, AVertex, BVertex, BipartiteHypergraph, Edge, EdgeId, InstanceError};
pub use matching::{verify_matching, PartialMatching};
pub use oracles::{verify_witness, WitnessCertificate};
