//! Signature vectors: the lexicographic potential that certifies progress of
//! an augmentation.
//!
//! For layer `L_i` the pair is
//! `(−⌊log_b(C_i·|X_i|)⌋, ⌊log_b(D_i·|Y_i|)⌋)` with
//! `C_i = K^i/(1 − μ)^{i−1}`, `D_i = K^i/(1 − μ)^i`, `K = 5r²/ε` and
//! `b = 1/(1 − μ³)`. The vector ends in an implicit top symbol `∞`.
//!
//! `b` sits within `μ³` of 1, so the logarithms are evaluated with
//! arbitrary-precision floats. Coordinates whose value lands within `2⁻²⁰`
//! of an integer are recomputed at twice the precision; if the doubled
//! evaluation still cannot separate the value from the integer, the floor is
//! reported as unresolved.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::ops::BitTest;
use dashu_int::IBig;
use num_rational::BigRational;

use super::params::Parameters;
use crate::tree::Layer;

type Float = FBig<HalfEven>;

/// Working precision floor, in bits.
const BASE_PRECISION: usize = 128;
/// Bits kept beyond the integer part of a coordinate.
const GUARD_BITS: usize = 80;
/// Distance to an integer that triggers a recomputation: `2⁻²⁰`.
const NEAR_INTEGER_LOG2: i32 = -20;

/// `(s_1, …, s_{2ℓ}, ∞)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SignatureVector {
    coords: Vec<i64>,
}

impl SignatureVector {
    pub fn new(coords: Vec<i64>) -> Self {
        SignatureVector { coords }
    }

    /// The finite coordinates; the terminal `∞` is implicit.
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Odd positions non-positive, even positions non-negative.
    pub fn has_sign_pattern(&self) -> bool {
        self.coords
            .iter()
            .enumerate()
            .all(|(k, &c)| if k % 2 == 0 { c <= 0 } else { c >= 0 })
    }

    /// Absolute values non-decreasing left to right.
    pub fn is_abs_monotone(&self) -> bool {
        self.coords
            .windows(2)
            .all(|w| w[0].unsigned_abs() <= w[1].unsigned_abs())
    }
}

impl Ord for SignatureVector {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.cmp(b) {
                Ordering::Equal => {}
                unequal => return unequal,
            }
        }
        // The shorter vector reaches its ∞ first, which beats any integer.
        other.coords.len().cmp(&self.coords.len())
    }
}

impl PartialOrd for SignatureVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignatureVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.coords {
            write!(f, "{c},")?;
        }
        f.write_str("inf")
    }
}

/// Strict lexicographic comparison with `∞` above every integer.
pub fn lex_less(a: &SignatureVector, b: &SignatureVector) -> bool {
    a < b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("layer {layer} has an empty X or Y; its signature is undefined")]
    LogOfZero { layer: usize },
}

/// A signature together with the floor-guard bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureReport {
    pub vector: SignatureVector,
    /// Coordinates recomputed at doubled precision.
    pub rechecks: u32,
    /// Coordinates whose floor stayed ambiguous at doubled precision.
    pub unresolved: u32,
}

/// Evaluates signatures for one parameter set.
pub struct SignatureEvaluator {
    ln_k: Constant,
    ln_one_minus_mu: Constant,
    ln_b: Constant,
}

/// A logarithmic constant cached at the highest precision asked for so far.
struct Constant {
    compute: fn(&BigRational, usize) -> Float,
    arg: BigRational,
    cached: Option<Float>,
}

impl Constant {
    fn new(arg: BigRational, compute: fn(&BigRational, usize) -> Float) -> Self {
        Constant {
            compute,
            arg,
            cached: None,
        }
    }

    fn at(&mut self, precision: usize) -> Float {
        match &self.cached {
            Some(v) if v.precision() >= precision => v.clone().with_precision(precision).value(),
            _ => {
                let v = (self.compute)(&self.arg, precision);
                self.cached = Some(v.clone());
                v
            }
        }
    }
}

fn to_float(q: &BigRational, precision: usize) -> Float {
    let numer = IBig::from_str(&q.numer().to_string()).expect("decimal integer");
    let denom = IBig::from_str(&q.denom().to_string()).expect("decimal integer");
    let n = Float::from(numer).with_precision(precision).value();
    let d = Float::from(denom).with_precision(precision).value();
    n / d
}

fn ln_of(q: &BigRational, precision: usize) -> Float {
    to_float(q, precision).ln()
}

/// `ln(1 + q)`.
fn ln_1p_of(q: &BigRational, precision: usize) -> Float {
    to_float(q, precision).ln_1p()
}

/// `−ln(1 − q)`.
fn neg_ln_1m_of(q: &BigRational, precision: usize) -> Float {
    -to_float(&-q.clone(), precision).ln_1p()
}

impl SignatureEvaluator {
    pub fn new(params: &Parameters) -> Self {
        let r2 = crate::ratio::int(params.r * params.r);
        let k = crate::ratio::int(5) * r2 / &params.epsilon;
        let mu = params.mu.clone();
        let mu3 = &mu * &mu * &mu;
        SignatureEvaluator {
            ln_k: Constant::new(k, ln_of),
            ln_one_minus_mu: Constant::new(-mu, ln_1p_of),
            ln_b: Constant::new(mu3, neg_ln_1m_of),
        }
    }

    /// `log_b(K^i / (1 − μ)^j · count)` at the given precision.
    fn log_b(&mut self, i: usize, j: usize, count: usize, precision: usize) -> Float {
        let ln_k = self.ln_k.at(precision);
        let ln_1m = self.ln_one_minus_mu.at(precision);
        let ln_b = self.ln_b.at(precision);
        let ln_count = Float::from(count as u64).with_precision(precision).value().ln();
        let i_f = Float::from(i as u64).with_precision(precision).value();
        let j_f = Float::from(j as u64).with_precision(precision).value();
        (i_f * ln_k - j_f * ln_1m + ln_count) / ln_b
    }

    /// `⌊log_b(K^i/(1 − μ)^j · count)⌋` with the near-integer guard.
    /// Returns the floor, whether it was rechecked, and whether it stayed
    /// ambiguous.
    pub fn floor_log(&mut self, i: usize, j: usize, count: usize) -> (i64, bool, bool) {
        let coarse = self.log_b(i, j, count, BASE_PRECISION);
        let magnitude = int_bits(&coarse);
        let precision = BASE_PRECISION.max(magnitude + GUARD_BITS);
        let value = if precision > BASE_PRECISION {
            self.log_b(i, j, count, precision)
        } else {
            coarse
        };
        let (floor, dist) = floor_and_distance(&value);
        if dist >= pow2(NEAR_INTEGER_LOG2) {
            return (floor, false, false);
        }
        let doubled = 2 * precision;
        let value = self.log_b(i, j, count, doubled);
        let (floor, dist) = floor_and_distance(&value);
        let limit = pow2(magnitude as i32 - precision as i32);
        (floor, true, dist < limit)
    }

    /// The signature of `layers` (`L_1..L_ℓ`).
    pub fn evaluate(&mut self, layers: &[Layer]) -> Result<SignatureReport, SignatureError> {
        let mut coords = Vec::with_capacity(2 * layers.len());
        let (mut rechecks, mut unresolved) = (0, 0);
        for (idx, layer) in layers.iter().enumerate() {
            let i = idx + 1;
            if layer.x.is_empty() || layer.y.is_empty() {
                return Err(SignatureError::LogOfZero { layer: i });
            }
            for (j, count, sign) in [(i - 1, layer.x.len(), -1i64), (i, layer.y.len(), 1)] {
                let (floor, rechecked, ambiguous) = self.floor_log(i, j, count);
                rechecks += rechecked as u32;
                unresolved += ambiguous as u32;
                coords.push(sign * floor);
            }
        }
        Ok(SignatureReport {
            vector: SignatureVector::new(coords),
            rechecks,
            unresolved,
        })
    }
}

/// Bit length of the integer part of `|v|`.
fn int_bits(v: &Float) -> usize {
    let int: IBig = v.floor().to_int().value();
    int.bit_len()
}

fn pow2(exp: i32) -> f64 {
    let mut x = 1.0f64;
    if exp >= 0 {
        for _ in 0..exp {
            x *= 2.0;
        }
    } else {
        for _ in 0..(-exp) {
            x *= 0.5;
        }
    }
    x
}

fn floor_and_distance(v: &Float) -> (i64, f64) {
    let floor = v.floor();
    let frac: f64 = (v.clone() - floor.clone()).to_f64().value();
    let int: IBig = floor.to_int().value();
    let floor = i64::try_from(int).expect("signature coordinate fits in i64");
    (floor, frac.min(1.0 - frac))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::params::Parameters;
    use alloc::vec;
    use num_bigint::BigInt;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    fn sv(c: &[i64]) -> SignatureVector {
        SignatureVector::new(c.to_vec())
    }

    #[test]
    fn lexicographic_order_with_top_symbol() {
        assert!(lex_less(&sv(&[-3, 5]), &sv(&[])));
        assert!(!lex_less(&sv(&[]), &sv(&[-3, 5])));
        assert!(lex_less(&sv(&[-3, 4]), &sv(&[-3, 5])));
        assert!(lex_less(&sv(&[-4, 9]), &sv(&[-3, 1])));
        assert!(lex_less(&sv(&[-3, 5, -6, 7]), &sv(&[-3, 5])));
        assert!(!lex_less(&sv(&[-3, 5]), &sv(&[-3, 5])));
    }

    #[test]
    fn empty_tree_signature_is_top() {
        let p = Parameters::new(3, 4, q(1, 1)).unwrap();
        let report = SignatureEvaluator::new(&p).evaluate(&[]).unwrap();
        assert_eq!(report.vector, sv(&[]));
        assert_eq!(report.vector.to_string(), "inf");
    }

    #[test]
    fn single_layer_fixture() {
        // Frozen from an independent 80-digit evaluation:
        // ln(45)/−ln(1 − 90⁻³) = 2775055.0517…, ln(45·90/89)/−ln(1 − 90⁻³) = 2783200.382…
        let p = Parameters::new(3, 4, q(1, 1)).unwrap();
        let mut ev = SignatureEvaluator::new(&p);
        let layer = Layer::new(vec![0], vec![1]);
        let report = ev.evaluate(&[layer]).unwrap();
        assert_eq!(report.vector, sv(&[-2775055, 2783200]));
        assert_eq!(report.unresolved, 0);
        assert!(report.vector.has_sign_pattern());
        assert!(report.vector.is_abs_monotone());
    }

    #[test]
    fn doubling_y_increases_second_coordinate() {
        let p = Parameters::new(3, 4, q(1, 1)).unwrap();
        let mut ev = SignatureEvaluator::new(&p);
        let one = ev.evaluate(&[Layer::new(vec![0], vec![1])]).unwrap().vector;
        let two = ev.evaluate(&[Layer::new(vec![0], vec![1, 2])]).unwrap().vector;
        assert!(two.coords()[1] > one.coords()[1]);
        // floor difference from the same independent evaluation: 505 304
        assert_eq!(two.coords()[1] - one.coords()[1], 505_304);
    }

    #[test]
    fn empty_y_is_rejected() {
        let p = Parameters::new(3, 4, q(1, 1)).unwrap();
        let mut ev = SignatureEvaluator::new(&p);
        assert_eq!(
            ev.evaluate(&[Layer::new(vec![0], vec![])]),
            Err(SignatureError::LogOfZero { layer: 1 })
        );
    }

    #[test]
    fn higher_layers_use_larger_multipliers() {
        // r=2, ε=1/4 makes b very close to 1 (μ = 1/640).
        let p = Parameters::new(2, 4, q(1, 4)).unwrap();
        let mut ev = SignatureEvaluator::new(&p);
        let layers = [Layer::new(vec![0], vec![1]), Layer::new(vec![2], vec![3])];
        let report = ev.evaluate(&layers).unwrap();
        assert!(report.vector.is_abs_monotone());
        assert_eq!(report.unresolved, 0);
    }
}
