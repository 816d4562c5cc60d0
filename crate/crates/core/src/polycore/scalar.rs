//! Exact rational scalars.
//!
//! `BigRational` already keeps itself reduced with a positive denominator,
//! so the scalar type is a plain alias plus a handful of helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Scalar::from_integer(acc)
}

/// Binomial-style falling factorial `n (n-1) ... (n-k+1)`.
pub fn falling_factorial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= n - j;
    }
    acc
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Scalar::new(num, den))
}

/// Always `p/q`, also for integers. Used wherever exact values leave the process.
pub fn to_fraction_string(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

pub fn is_integer_one(s: &Scalar) -> bool {
    s.is_one()
}

pub fn abs(s: &Scalar) -> Scalar {
    s.abs()
}
