use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use super::{min_hitting_set, OracleError};
use crate::hypergraph::{AVertex, BipartiteHypergraph};
use crate::ratio::{floor_usize, haxell_bound};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaxellMode {
    /// `τ(E_S) > (2r − 3 + ε)(|S| − 1)`.
    Strengthened,
    /// `τ(E_S) > (2r − 3)(|S| − 1)`; ε is ignored.
    Classic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HaxellStatus {
    Satisfied,
    /// First violating set in (size, lexicographic) order, with its exact τ.
    Violated {
        s: Vec<AVertex>,
        tau: usize,
    },
}

/// Exhaustively checks Haxell's condition over every nonempty `S ⊆ A`.
///
/// Subsets are visited by increasing size, then lexicographically, so a
/// reported violator is a smallest one.
pub fn check_haxell(
    h: &BipartiteHypergraph,
    epsilon: &BigRational,
    mode: HaxellMode,
    max_a: usize,
) -> Result<HaxellStatus, OracleError> {
    let n = h.a_count();
    if n > max_a {
        return Err(OracleError::InstanceTooLarge { a_count: n, cap: max_a });
    }
    let eps = match mode {
        HaxellMode::Strengthened => epsilon.clone(),
        HaxellMode::Classic => BigRational::zero(),
    };
    for k in 1..=n {
        // τ is an integer, so τ ≤ bound ⇔ τ ≤ ⌊bound⌋.
        let budget = match floor_usize(&haxell_bound(h.r(), &eps, k)) {
            Some(b) => b,
            // negative bound cannot be violated
            None => continue,
        };
        let mut s: Vec<AVertex> = (0..k).collect();
        loop {
            let family = h.incident_edges(&s);
            if let Ok(hs) = min_hitting_set(h, &family, Some(budget)) {
                return Ok(HaxellStatus::Violated { s, tau: hs.size });
            }
            if !next_combination(&mut s, n) {
                break;
            }
        }
    }
    Ok(HaxellStatus::Satisfied)
}

/// Advances `s` to the next k-subset of `0..n` in lexicographic order.
fn next_combination(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
