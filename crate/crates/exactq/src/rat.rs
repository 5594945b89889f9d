//! Rational scalars and their text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    assert!(d != 0, "frac: zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Renders as `p/q`, or `p` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, `p/q` with decimal integers; normalises to lowest terms.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(RatParseError::Empty);
    }
    let int = |x: &str| -> Result<BigInt, RatParseError> {
        let body = x
            .strip_prefix('-')
            .or_else(|| x.strip_prefix('+'))
            .unwrap_or(x);
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(RatParseError::Malformed(s.to_string()));
        }
        x.parse::<BigInt>()
            .map_err(|_| RatParseError::Malformed(s.to_string()))
    };
    match t.split_once('/') {
        None => Ok(Rat::from_integer(int(t)?)),
        Some((n, d)) => {
            let n = int(n)?;
            let d = int(d)?;
            if d.is_zero() {
                return Err(RatParseError::ZeroDenominator(s.to_string()));
            }
            if d.is_negative() {
                return Err(RatParseError::Malformed(s.to_string()));
            }
            Ok(Rat::new(n, d))
        }
    }
}
