//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q` (no spaces inside).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub(crate) fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-5", "3/7", "-12/5"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("4/2"), Some(int(2)));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), one());
        assert_eq!(factorial(5), int(120));
    }
}
