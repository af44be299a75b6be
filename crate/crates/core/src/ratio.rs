//! Exact rational helpers. Every threshold the solver compares against is a
//! [`BigRational`]; floats never decide control flow.

use alloc::string::String;

use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("empty rational")]
    Empty,
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

/// Parses `"p/q"`, an integer, or a decimal such as `"0.25"` exactly.
pub fn parse_rational(text: &str) -> Result<BigRational, RationalParseError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let malformed = || RationalParseError::Malformed(String::from(t));
    if let Some((p, q)) = t.split_once('/') {
        let p = parse_int(p.trim()).ok_or_else(malformed)?;
        let q = parse_int(q.trim()).ok_or_else(malformed)?;
        if q.is_zero() {
            return Err(RationalParseError::ZeroDenominator);
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    if !int_part.bytes().all(|c| c.is_ascii_digit()) || !frac_part.bytes().all(|c| c.is_ascii_digit()) {
        return Err(malformed());
    }
    let mut digits = String::from(int_part);
    digits.push_str(frac_part);
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(malformed)?
    };
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = BigRational::new(numer, denom);
    Ok(if neg { -value } else { value })
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    BigInt::parse_bytes(s.as_bytes(), 10)
}

/// Integer `n` as a rational.
pub fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Haxell bound `(2r − 3 + ε)(|S| − 1)`; may be negative for `|S| = 0`.
pub fn haxell_bound(r: usize, epsilon: &BigRational, s_len: usize) -> BigRational {
    let factor = int(2 * r) - int(3) + epsilon.clone();
    let size = BigRational::from_integer(BigInt::from(s_len as i64 - 1));
    factor * size
}

/// `⌊q⌋` clamped to `usize`; negative values give `None`.
pub fn floor_usize(q: &BigRational) -> Option<usize> {
    if q.is_negative() {
        return None;
    }
    let f = q.floor().to_integer();
    usize::try_from(f).ok()
}

/// `⌈q⌉` for a positive rational.
pub fn ceil_usize(q: &BigRational) -> Option<usize> {
    if q.is_negative() {
        return None;
    }
    usize::try_from(q.ceil().to_integer()).ok()
}

/// `count > factor · size`, exactly.
pub fn exceeds(count: usize, factor: &BigRational, size: usize) -> bool {
    int(count) > factor * int(size)
}

/// Canonical `"p/q"` (or `"p"` for integers) rendering.
pub fn format_rational(q: &BigRational) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    if q.denom().is_one() {
        let _ = write!(s, "{}", q.numer());
    } else {
        let _ = write!(s, "{}/{}", q.numer(), q.denom());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/2").unwrap(), q(1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("4/6").unwrap(), q(2, 3));
        assert_eq!(parse_rational("1/0"), Err(RationalParseError::ZeroDenominator));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational(".").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn bound_and_rounding() {
        assert_eq!(haxell_bound(2, &q(1, 2), 2), q(3, 2));
        assert_eq!(haxell_bound(3, &q(1, 1), 1), q(0, 1));
        assert_eq!(floor_usize(&q(3, 2)), Some(1));
        assert_eq!(floor_usize(&q(-1, 2)), None);
        assert_eq!(ceil_usize(&q(90, 1)), Some(90));
        assert_eq!(ceil_usize(&q(181, 2)), Some(91));
        assert!(!exceeds(1, &q(1, 90), 90));
        assert!(exceeds(2, &q(1, 90), 90));
        assert_eq!(format_rational(&q(6, 4)), "3/2");
        assert_eq!(format_rational(&q(5, 1)), "5");
    }
}
