//! Helpers for exact rational arithmetic and surd comparisons.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::Rational;

pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn frac(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Rational {
    Rational::new(p.into(), q.into())
}

/// `p/q`, or just `p` for integers.
pub fn to_fraction_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with 10 significant digits, e.g. `60/7 -> 8.571428571`.
pub fn to_decimal_string(r: &Rational) -> String {
    const SIG: i64 = 10;
    if r.is_zero() {
        return "0".to_string();
    }
    let value = r.to_f64().unwrap_or(f64::NAN);
    if !value.is_finite() {
        return if r.is_negative() { "-inf" } else { "inf" }.to_string();
    }
    let exponent = value.abs().log10().floor() as i64;
    let decimals = (SIG - 1 - exponent).max(0) as usize;
    let s = format!("{value:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Compares `a*sqrt(p) + b*sqrt(q)` with `c*sqrt(r)`.
///
/// All of `a, b, c, p, q, r` must be non-negative. Decided by squaring with
/// sign tracking, never by floating point.
pub fn cmp_two_surds_with_surd(
    a: &Rational,
    p: &Rational,
    b: &Rational,
    q: &Rational,
    c: &Rational,
    r: &Rational,
) -> Ordering {
    debug_assert!([a, p, b, q, c, r].iter().all(|x| !x.is_negative()));
    // both sides are non-negative, so compare squares:
    // a^2 p + b^2 q + 2ab sqrt(pq)  vs  c^2 r
    let slack = c * c * r - a * a * p - b * b * q;
    let cross = a * b * Rational::from_integer(2.into());
    cmp_surd_with_rational(&cross, &(p * q), &slack)
}

/// Compares `a*sqrt(p)` with the rational `t`, for `a, p >= 0`.
pub fn cmp_surd_with_rational(a: &Rational, p: &Rational, t: &Rational) -> Ordering {
    debug_assert!(!a.is_negative() && !p.is_negative());
    if t.is_negative() {
        return Ordering::Greater;
    }
    (a * a * p).cmp(&(t * t))
}

/// Compares `a*sqrt(p) + b*sqrt(q)` with the rational `t`, for `a, b, p, q >= 0`.
pub fn cmp_surd_sum_with_rational(
    a: &Rational,
    p: &Rational,
    b: &Rational,
    q: &Rational,
    t: &Rational,
) -> Ordering {
    if t.is_negative() {
        return Ordering::Greater;
    }
    // a^2 p + b^2 q + 2ab sqrt(pq) vs t^2
    let slack = t * t - a * a * p - b * b * q;
    let cross = a * b * Rational::from_integer(2.into());
    cmp_surd_with_rational(&cross, &(p * q), &slack)
}
