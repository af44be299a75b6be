use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::ratio::{ceil_usize, int};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("uniformity r = {0} is below 2")]
    BadUniformity(usize),
    #[error("mu must lie strictly between 0 and 1")]
    MuOutOfRange,
    #[error("degree bound U must be at least 1")]
    ZeroDegreeBound,
}

/// Optional replacements for derived parameters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub mu: Option<BigRational>,
    pub u: Option<usize>,
    pub max_iterations: Option<u64>,
    /// Re-check tree and progress invariants at every iteration boundary.
    pub check_invariants: bool,
}

/// Solver parameters, all thresholds exact.
///
/// Defaults: `μ = ε²/(10r²)`, `U = ⌈1/μ⌉`, `δ = ε/(5r²)`,
/// `γ = (1 − μ)ε/(5r²)`, small-tree threshold `⌈5r²/ε⌉`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parameters {
    pub r: usize,
    pub epsilon: BigRational,
    pub mu: BigRational,
    pub u: usize,
    pub delta: BigRational,
    pub gamma: BigRational,
    pub small_tree_threshold: usize,
    /// Iteration cap for a single augmentation.
    pub max_iterations: u64,
    pub check_invariants: bool,
}

impl Parameters {
    /// Default parameters for an instance with uniformity `r` and `n = |A|`.
    pub fn new(r: usize, n: usize, epsilon: BigRational) -> Result<Self, ParamError> {
        Self::with_overrides(r, n, epsilon, &Overrides::default())
    }

    pub fn with_overrides(r: usize, n: usize, epsilon: BigRational, overrides: &Overrides) -> Result<Self, ParamError> {
        if r < 2 {
            return Err(ParamError::BadUniformity(r));
        }
        if !epsilon.is_positive() {
            return Err(ParamError::NonPositiveEpsilon);
        }
        let r2 = int(r * r);
        let mu = match &overrides.mu {
            Some(mu) => mu.clone(),
            None => &epsilon * &epsilon / (int(10) * &r2),
        };
        if !mu.is_positive() || mu >= BigRational::one() {
            return Err(ParamError::MuOutOfRange);
        }
        let u = match overrides.u {
            Some(u) => u,
            None => ceil_usize(&mu.recip()).ok_or(ParamError::MuOutOfRange)?,
        };
        if u == 0 {
            return Err(ParamError::ZeroDegreeBound);
        }
        let delta = &epsilon / (int(5) * &r2);
        let gamma = (BigRational::one() - &mu) * &delta;
        let small_tree_threshold = ceil_usize(&delta.recip()).ok_or(ParamError::NonPositiveEpsilon)?;
        Ok(Parameters {
            r,
            epsilon,
            mu,
            u,
            delta,
            gamma,
            small_tree_threshold,
            max_iterations: overrides.max_iterations.unwrap_or_else(|| default_max_iterations(n)),
            check_invariants: overrides.check_invariants,
        })
    }
}

/// `10·n²·(⌈log₂ n⌉ + 2)² + 1000`, saturating.
pub fn default_max_iterations(n: usize) -> u64 {
    let n = n as u64;
    let log = if n <= 1 { 0 } else { 64 - (n - 1).leading_zeros() as u64 };
    10u64
        .saturating_mul(n.saturating_mul(n))
        .saturating_mul((log + 2) * (log + 2))
        .saturating_add(1000)
}

/// `(1 + γ)^ℓ ≤ n`.
pub fn depth_within_bound(gamma: &BigRational, depth: usize, n: usize) -> bool {
    let base = BigRational::one() + gamma;
    let mut power = BigRational::one();
    let limit = BigRational::from_integer(BigInt::from(n));
    for _ in 0..depth {
        power *= &base;
        if power > limit {
            return false;
        }
    }
    power <= limit
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn defaults_for_r3_eps1() {
        let p = Parameters::new(3, 10, q(1, 1)).unwrap();
        assert_eq!(p.mu, q(1, 90));
        assert_eq!(p.u, 90);
        assert_eq!(p.delta, q(1, 45));
        assert_eq!(p.gamma, q(89, 4050));
        assert_eq!(p.small_tree_threshold, 45);
        assert!(p.u >= 10);
        assert!(p.mu < q(1, 10));
    }

    #[test]
    fn defaults_for_r2_quarter() {
        let p = Parameters::new(2, 10, q(1, 4)).unwrap();
        assert_eq!(p.mu, q(1, 640));
        assert_eq!(p.u, 640);
        assert_eq!(p.small_tree_threshold, 80);
    }

    #[test]
    fn overrides_and_errors() {
        let o = Overrides {
            mu: Some(q(1, 3)),
            ..Overrides::default()
        };
        let p = Parameters::with_overrides(3, 5, q(1, 1), &o).unwrap();
        assert_eq!(p.u, 3);
        let o = Overrides {
            mu: Some(q(1, 3)),
            u: Some(7),
            max_iterations: Some(5),
            check_invariants: true,
        };
        let p = Parameters::with_overrides(3, 5, q(1, 1), &o).unwrap();
        assert_eq!((p.u, p.max_iterations, p.check_invariants), (7, 5, true));
        assert_eq!(Parameters::new(3, 5, q(0, 1)), Err(ParamError::NonPositiveEpsilon));
        assert_eq!(Parameters::new(1, 5, q(1, 1)), Err(ParamError::BadUniformity(1)));
        let o = Overrides {
            mu: Some(q(1, 1)),
            ..Overrides::default()
        };
        assert_eq!(
            Parameters::with_overrides(3, 5, q(1, 1), &o),
            Err(ParamError::MuOutOfRange)
        );
    }

    #[test]
    fn iteration_cap() {
        assert_eq!(default_max_iterations(0), 1000);
        assert_eq!(default_max_iterations(1), 1040);
        // n = 4: ⌈log₂ 4⌉ = 2 → 10·16·16 + 1000
        assert_eq!(default_max_iterations(4), 3560);
        // n = 5: ⌈log₂ 5⌉ = 3 → 10·25·25 + 1000
        assert_eq!(default_max_iterations(5), 7250);
    }

    #[test]
    fn depth_bound() {
        let g = q(1, 2);
        assert!(depth_within_bound(&g, 0, 1));
        assert!(!depth_within_bound(&g, 1, 1));
        // 1.5³ = 3.375 ≤ 4 < 1.5⁴
        assert!(depth_within_bound(&g, 3, 4));
        assert!(!depth_within_bound(&g, 4, 4));
    }
}
