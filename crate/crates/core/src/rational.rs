//! Exact rational scalars and the fixed numeric print formats.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Arbitrary-precision rational in canonical form (reduced, positive
/// denominator).  All weight and coefficient arithmetic in this crate is
/// exact.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d` from machine integers.  Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or an integer literal into a rational.
///
/// Rejects zero denominators and float syntax; the error text is meant to
/// be embedded in a line-numbered parse error by the caller.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| format!("expected a rational like 3/4 or 7, got `{s}`"))?;
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| format!("expected a rational like 3/4 or 7, got `{s}`"))?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(numer, denom))
}

/// Formats a float with 12 significant digits in scientific notation.
///
/// This is the only float print format the crate emits, so outputs are
/// byte-stable across runs and round-trip through `f64::from_str`.
pub fn fmt_f64_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x:.11e}")
}

/// Converts a finite float to the exact rational it represents.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x)
        .ok_or_else(|| Error::NumericIntegrity(format!("non-finite value {x}")))
}
