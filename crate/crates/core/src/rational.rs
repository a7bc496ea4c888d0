//! Exact rational helpers shared across the crate.
//!
//! All coordinates are [`Rational`] values. The textual form is `"num/den"`
//! (or a bare integer `"num"` on input).

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Formats as `"num/den"`, always with an explicit denominator.
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// A rational strictly inside `(lo, hi)` that avoids every value of `forbidden`.
///
/// Picks the midpoint of the widest sub-gap left after removing the forbidden
/// values, so the choice is deterministic. Returns `None` when `lo >= hi`.
pub fn pick_between(lo: &Rational, hi: &Rational, forbidden: &[Rational]) -> Option<Rational> {
    if lo >= hi {
        return None;
    }
    let mut cuts: Vec<&Rational> = forbidden.iter().filter(|v| *v > lo && *v < hi).collect();
    cuts.sort();
    cuts.dedup();
    let mut best: Option<(Rational, Rational)> = None;
    let mut prev = lo;
    for c in cuts.iter().copied().chain(std::iter::once(hi)) {
        let width = c - prev;
        if best.as_ref().is_none_or(|(w, _)| width > *w) {
            best = Some((width, midpoint(prev, c)));
        }
        prev = c;
    }
    best.map(|(_, m)| m)
}

/// Least common multiple of the denominators, used to clear fractions.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
