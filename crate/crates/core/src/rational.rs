//! Exact rationals and their text forms.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms with
//! a positive denominator. Nothing in the decision paths of this crate ever
//! touches floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn half(x: &Rational, y: &Rational) -> Rational {
    (x + y) / int(2)
}

/// Parses `n/d` or a bare integer `n`. Returns `None` on malformed input or a
/// zero denominator.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Canonical `num/den` text, always with an explicit denominator.
pub fn fmt_frac(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Decimal rendering rounded half away from zero to `places` digits. Used
/// only for plotting output.
pub fn to_decimal(x: &Rational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let (mut whole, rem) = scaled.numer().div_rem(scaled.denom());
    if rem * BigInt::from(2) >= *scaled.denom() {
        whole += 1;
    }
    let (int_part, frac_part) = whole.div_rem(&scale);
    let sign = if x.is_negative() && !whole.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = places)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_lowers_terms() {
        assert_eq!(parse("2/4"), Some(q(1, 2)));
        assert_eq!(parse("-3/-6"), Some(q(1, 2)));
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("a/2"), None);
    }

    #[test]
    fn frac_always_has_denominator() {
        assert_eq!(fmt_frac(&zero()), "0/1");
        assert_eq!(fmt_frac(&q(6, 8)), "3/4");
        assert_eq!(fmt_frac(&q(-1, 3)), "-1/3");
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(to_decimal(&q(2, 3), 4), "0.6667");
        assert_eq!(to_decimal(&q(1, 8), 2), "0.13");
        assert_eq!(to_decimal(&one(), 3), "1.000");
        assert_eq!(to_decimal(&q(-1, 3), 2), "-0.33");
        assert_eq!(to_decimal(&q(5, 2), 0), "3");
    }
}
