//! Exact rational arithmetic helpers.
//!
//! All weights, scale factors and thresholds in this crate are
//! arbitrary-precision rationals, kept in lowest terms with a positive
//! denominator by construction.

use alloc::string::{String, ToString};
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Shorthand for `p/q` from machine integers. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// The integer `p` as a rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parse errors for [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    /// The string is not of the form `p` or `p/q`.
    Malformed(String),
    /// The denominator is zero.
    ZeroDenominator,
}

impl core::fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ParseRationalError::Malformed(s) => write!(f, "malformed rational `{s}`"),
            ParseRationalError::ZeroDenominator => write!(f, "zero denominator"),
        }
    }
}

impl core::error::Error for ParseRationalError {}

/// Parses `p/q` or a bare integer `p` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let bad = || ParseRationalError::Malformed(String::from(s));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(ParseRationalError::ZeroDenominator);
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Canonical `p/q` rendering, with an explicit `/1` for integers.
pub fn format_rational(x: &Rational) -> String {
    alloc::format!("{}/{}", x.numer(), x.denom())
}

/// Rounds `x` to `digits` decimal places and renders it as a plain decimal.
///
/// Used for printing irrational bounds that are only available as
/// high-precision rational approximations.
pub fn format_decimal(x: &Rational, digits: u32) -> String {
    let negative = x.is_negative();
    let magnitude = x.abs();
    let scale = BigInt::from(10u8).pow(digits);
    // round(|x| * 10^digits) half away from zero
    let units = (magnitude * Rational::from_integer(scale.clone()) + rat(1, 2))
        .floor()
        .to_integer();
    let (ipart, frac) = units.div_mod_floor(&scale);
    let mut frac_str = frac.to_string();
    while (frac_str.len() as u32) < digits {
        frac_str.insert(0, '0');
    }
    let sign = if negative && !units.is_zero() { "-" } else { "" };
    alloc::format!("{sign}{ipart}.{frac_str}")
}

/// Floor of `sqrt(x) * 10^digits`, divided back down: a rational `r` with
/// `r <= sqrt(x) < r + 10^-digits`. Requires `x >= 0`.
pub fn sqrt_floor(x: &Rational, digits: u32) -> Rational {
    assert!(!x.is_negative(), "square root of a negative rational");
    let scale = BigInt::from(10u8).pow(digits);
    // sqrt(p/q) = sqrt(p*q)/q, so floor(sqrt(p*q*10^2d)) / (q*10^d) is a
    // lower bound within 10^-digits.
    let radicand = x.numer() * x.denom() * &scale * &scale;
    let root = num_integer::Roots::sqrt(&radicand);
    Rational::new(root, x.denom() * scale)
}

/// Compares `sqrt(radicand)` with `bound` exactly, by squaring.
/// Requires `radicand >= 0`.
pub fn cmp_sqrt(radicand: &Rational, bound: &Rational) -> Ordering {
    assert!(!radicand.is_negative(), "square root of a negative rational");
    if bound.is_negative() {
        return Ordering::Greater;
    }
    radicand.cmp(&(bound * bound))
}

/// gcd of two nonnegative machine integers with `gcd(0, x) = x`.
pub fn gcd_usize(a: usize, b: usize) -> usize {
    a.gcd(&b)
}

/// True if every edge weight is the integer one.
pub fn is_one(x: &Rational) -> bool {
    x.is_one()
}
