//! Exact rational helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational used to certify identities exactly.
pub type Exact = BigRational;

pub fn int(n: i64) -> Exact {
    Exact::from_integer(BigInt::from(n))
}

pub fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// Exact value of a finite `f64` (every finite binary float is a dyadic rational).
pub fn from_f64(x: f64) -> Option<Exact> {
    Exact::from_float(x)
}

/// `base^e` for a possibly negative integer exponent.
pub fn powi(base: i64, e: i64) -> Exact {
    let b = int(base);
    if e >= 0 {
        Pow::pow(b, e as u32)
    } else {
        Pow::pow(b.recip(), (-e) as u32)
    }
}

/// Parses `num/den`, an integer, or a decimal (optionally with exponent) into
/// an exact rational. `0.1` becomes exactly `1/10`.
pub fn parse(token: &str) -> Result<Exact> {
    let bad = || Error::Argument(format!("not a number: {token:?}"));
    let token = token.trim();
    if let Some((n, d)) = token.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Argument(format!("zero denominator in {token:?}")));
        }
        return Ok(Exact::new(n, d));
    }
    let (mantissa, exponent) = match token.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = token[pos + 1..].parse().map_err(|_| bad())?;
            (&token[..pos], e)
        }
        None => (token, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{whole}{frac}");
    let mut value = Exact::from_integer(all.parse::<BigInt>().unwrap_or_default());
    let shift = exponent - frac.len() as i64;
    value *= powi(10, shift);
    Ok(if negative { -value } else { value })
}
