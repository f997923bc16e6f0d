//! Helpers around [`Rational`], the scalar used by every exact computation.

use std::cmp::Ordering;
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::Sign;
use malachite_base::num::arithmetic::traits::{Abs, CheckedSqrt};
use malachite_nz::integer::Integer;
pub use malachite_q::Rational;

use crate::error::{Error, Result};

pub fn rat(v: i64) -> Rational {
    Rational::from(v)
}

/// `numerator / denominator`, reduced. Panics on a zero denominator.
pub fn frac(numerator: i64, denominator: i64) -> Rational {
    Rational::from_signeds(numerator, denominator)
}

/// Parses the canonical string form: an optionally signed decimal integer or
/// fraction `"n/d"` with `d > 0`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let trimmed = s.trim();
    if trimmed.is_empty() || trimmed.starts_with('+') {
        return Err(Error::Parse(format!("invalid rational {s:?}")));
    }
    Rational::from_str(trimmed).map_err(|()| Error::Parse(format!("invalid rational {s:?}")))
}

pub fn sign(x: &Rational) -> Ordering {
    x.sign()
}

pub fn is_positive(x: &Rational) -> bool {
    x.sign() == Ordering::Greater
}

pub fn is_negative(x: &Rational) -> bool {
    x.sign() == Ordering::Less
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

/// Exact square root when `x` is the square of a rational.
pub fn checked_sqrt(x: &Rational) -> Option<Rational> {
    if is_negative(x) {
        return None;
    }
    x.checked_sqrt()
}

pub fn numerator(x: &Rational) -> Integer {
    let n = Integer::from(x.to_numerator());
    if is_negative(x) {
        -n
    } else {
        n
    }
}

pub fn denominator(x: &Rational) -> Integer {
    Integer::from(x.to_denominator())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "3", "-1/2", "22/7", "-123456789012345678901234567890"] {
            assert_eq!(parse_rational(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn parse_canonicalizes_and_rejects_garbage() {
        assert_eq!(parse_rational("2/4").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-0").unwrap(), rat(0));
        for bad in ["", "+3", "1/0", "a", "1/-2", "1.5", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn square_roots() {
        assert_eq!(checked_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(checked_sqrt(&rat(2)), None);
        assert_eq!(checked_sqrt(&rat(-4)), None);
    }

    #[test]
    fn numerator_keeps_sign() {
        assert_eq!(numerator(&frac(-3, 4)), Integer::from(-3));
        assert_eq!(denominator(&frac(-3, 4)), Integer::from(4));
    }
}
