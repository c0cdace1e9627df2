//! Arbitrary-precision rationals and the integer combinatorics built on them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact fraction, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Binomial coefficient, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// Integer power of a rational.
pub fn rational_pow(base: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// Exact square root if `value` is the square of a rational.
pub fn rational_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let exact = |x: &BigInt| {
        let r = x.sqrt();
        (&r * &r == *x).then_some(r)
    };
    let numer = exact(value.numer())?;
    let denom = exact(value.denom())?;
    Some(Rational::new(numer, denom))
}

/// Always renders as `p/q`, including integers (`3/1`).
pub fn format_fraction(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `p/q`, an integer, or a plain decimal such as `-0.125`.
///
/// Decimals are converted digit-for-digit, so `0.1` is exactly `1/10`.
/// Exponent notation and other float literals are only accepted when
/// `allow_float` is set, in which case the nearest `f64` is converted exactly.
pub fn parse_rational(text: &str, allow_float: bool) -> Result<Rational> {
    let s = text.trim();
    let fail = || Error::ParseRational(text.to_string());
    if s.is_empty() {
        return Err(fail());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| fail())?;
        let q: BigInt = q.trim().parse().map_err(|_| fail())?;
        if q.is_zero() {
            return Err(fail());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some(value) = parse_decimal(s) {
        return Ok(value);
    }
    if allow_float {
        let f: f64 = s.parse().map_err(|_| fail())?;
        return Rational::from_float(f).ok_or_else(fail);
    }
    Err(fail())
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{whole}{frac}").parse().ok()?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let value = Rational::new(digits, scale);
    Some(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(40, 20), "137846528820".parse().unwrap());
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/2", false).unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-6/4", false).unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("0.1", false).unwrap(), rat(1, 10));
        assert_eq!(parse_rational("-1.25", false).unwrap(), rat(-5, 4));
        assert_eq!(parse_rational("3", false).unwrap(), int(3));
        assert_eq!(parse_rational(".5", false).unwrap(), rat(1, 2));
    }

    #[test]
    fn rejects_float_literals_in_exact_mode() {
        assert!(parse_rational("1e-3", false).is_err());
        assert_eq!(
            parse_rational("1e-3", true).unwrap(),
            Rational::from_float(1e-3).unwrap()
        );
        assert!(parse_rational("1/0", false).is_err());
        assert!(parse_rational("abc", true).is_err());
        assert!(parse_rational("", false).is_err());
    }

    #[test]
    fn fraction_format_is_always_p_over_q() {
        assert_eq!(format_fraction(&int(3)), "3/1");
        assert_eq!(format_fraction(&rat(-2, 6)), "-1/3");
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(5, 4)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
    }
}
