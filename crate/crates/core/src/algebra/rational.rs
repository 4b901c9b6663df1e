//! Exact rational scalars.
//!
//! All coefficients in the crate are [`Rational`]s: arbitrary-precision
//! fractions kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` reduced to lowest terms. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational literal {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `"num/den"` or a bare integer `"num"`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"num/den"` rendering; integers keep the `/1`.
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Short human form: `3`, `-1/2`.
pub fn display_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Gcd of a list of integers (zero for an all-zero list).
pub fn integer_content<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Exact integer power of a rational.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

/// Rational square root, when it exists.
pub fn sqrt_exact(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let n = integer_root(value.numer(), 2)?;
    let d = integer_root(value.denom(), 2)?;
    Some(Rational::new(n, d))
}

/// Rational cube root, when it exists.
pub fn cbrt_exact(value: &Rational) -> Option<Rational> {
    let sign = if value.is_negative() { -1 } else { 1 };
    let n = integer_root(&value.numer().abs(), 3)?;
    let d = integer_root(value.denom(), 3)?;
    Some(Rational::new(n * sign, d))
}

fn integer_root(value: &BigInt, k: u32) -> Option<BigInt> {
    let root = value.nth_root(k);
    (root.pow(k) == *value).then_some(root)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/-4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7));
        assert_eq!(format_rational(&rat(7)), "7/1");
        assert_eq!(format_rational(&ratio(-3, 2)), "-3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn exact_roots() {
        assert_eq!(sqrt_exact(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(sqrt_exact(&ratio(2, 1)), None);
        assert_eq!(cbrt_exact(&ratio(-8, 27)), Some(ratio(-2, 3)));
        assert_eq!(cbrt_exact(&rat(4)), None);
    }
}
