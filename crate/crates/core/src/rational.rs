//! Reduced arbitrary-precision fractions and modular inverses.
//!
//! `Rational` is the universal value type of the crate. It is backed by
//! `num_rational::BigRational`, which keeps every value reduced with a
//! positive denominator, so equality is structural and all arithmetic is
//! exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};

pub type Rational = num_rational::BigRational;

/// `n/d` as a reduced rational. Panics on `d == 0`; use [`parse_rational`]
/// for untrusted input.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Canonical serialization: `"p/q"` reduced, or just `"n"` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"p/q"` or `"n"`. The result is reduced with positive denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Floor of a rational as a big integer.
pub fn floor_int(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// Ceiling of a rational as a big integer.
pub fn ceil_int(r: &Rational) -> BigInt {
    r.numer().div_ceil(r.denom())
}

/// The inverse `q*` of `q` mod `p`, normalized so `0 < q* < p`.
///
/// Requires `0 < q < p` and `gcd(q, p) = 1`; extended Euclid underneath.
pub fn mod_inverse(q: &BigInt, p: &BigInt) -> Result<BigInt> {
    if !(q > &BigInt::zero() && q < p) {
        return Err(domain(format!(
            "mod_inverse needs 0 < q < p, got q={q}, p={p}"
        )));
    }
    let ext = q.extended_gcd(p);
    if !ext.gcd.is_one() {
        return Err(domain(format!(
            "mod_inverse needs gcd(q, p) = 1, got gcd={}",
            ext.gcd
        )));
    }
    let mut x = ext.x.mod_floor(p);
    if x.is_zero() {
        // can only happen for p = 1, excluded by 0 < q < p
        x = BigInt::one();
    }
    Ok(x)
}

/// `mod_inverse` over machine integers.
pub fn mod_inverse_i64(q: i64, p: i64) -> Result<i64> {
    let r = mod_inverse(&BigInt::from(q), &BigInt::from(p))?;
    i64::try_from(&r).map_err(|_| Error::Internal("mod inverse out of i64 range".into()))
}

/// Checked big-integer to `i64` conversion with a domain error on overflow.
pub fn to_i64(v: &BigInt, what: &str) -> Result<i64> {
    i64::try_from(v).map_err(|_| domain(format!("{what} does not fit in 64 bits: {v}")))
}
