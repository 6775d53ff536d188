//! Exact rational helpers.
//!
//! Every distance in the crate is a [`Rational`] (an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator). The textual
//! form is `p/q`, or `p` when the denominator is one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q` or `-p/q` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Parses a comma-separated list of rationals. The empty string is the empty list.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

/// Canonical text form (`p/q` in lowest terms, or `p`).
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn abs_diff(a: &Rational, b: &Rational) -> Rational {
    (a - b).abs()
}

/// Whether `r * denom` is an integer.
pub fn on_grid(r: &Rational, denom: u64) -> bool {
    (r * BigInt::from(denom)).is_integer()
}

/// `r * denom` as a `u32`, if it is a non-negative integer that fits.
pub fn grid_units(r: &Rational, denom: u64) -> Option<u32> {
    let scaled = r * BigInt::from(denom);
    if !scaled.is_integer() || scaled.is_negative() {
        return None;
    }
    scaled.to_integer().to_u32()
}

pub fn from_units(units: u64, denom: u64) -> Rational {
    Rational::new(BigInt::from(units), BigInt::from(denom))
}

/// Least common multiple of the denominators of `values` (one for an empty input).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Smallest integer `n` with `n >= r`.
pub fn ceil_to_u64(r: &Rational) -> Option<u64> {
    r.ceil().to_integer().to_u64()
}

/// Exact `k`-th root of a non-negative integer, if it exists.
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

/// Writes a positive rational `x != 1` as `base^k` with `base > 1` not itself a
/// perfect power. Returns `None` for zero, negative values or one.
pub fn primitive_power(x: &Rational) -> Option<(Rational, i64)> {
    if !x.is_positive() || x.is_one() {
        return None;
    }
    let (x, sign) = if *x < Rational::one() {
        (x.recip(), -1)
    } else {
        (x.clone(), 1)
    };
    let num = x.numer();
    let den = x.denom();
    // Exponent of any perfect power is bounded by log2 of the larger part.
    let max_k = num.bits().max(den.bits()).max(1) as u32;
    for k in (2..=max_k).rev() {
        if let (Some(a), Some(b)) = (exact_root(num, k), exact_root(den, k)) {
            return Some((Rational::new(a, b), sign * k as i64));
        }
    }
    Some((x, sign))
}
