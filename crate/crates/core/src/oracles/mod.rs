//! Exact, exponential-time reference procedures for desk-scale instances:
//! minimum hitting sets, exhaustive Haxell-condition checks, brute-force
//! perfect matchings, and witness certificate verification.

mod brute_force;
mod haxell;
mod hitting_set;
mod witness;

pub use brute_force::brute_force_perfect_matching;
pub use haxell::{check_haxell, HaxellMode, HaxellStatus};
pub use hitting_set::{min_hitting_set, ExceedsBudget, HittingSetResult};
pub use witness::{verify_witness, WitnessCertificate, WitnessViolation};

/// Default cap on `|A|` for the exhaustive oracles.
pub const DEFAULT_MAX_A: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("instance has {a_count} A-vertices, above the oracle cap of {cap}")]
    InstanceTooLarge { a_count: usize, cap: usize },
}
