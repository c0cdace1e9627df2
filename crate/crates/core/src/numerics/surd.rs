//! Elements `a + b√D` of the real quadratic field ℚ(√D).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_fraction, parse_rational, rational_sqrt, Rational};
use crate::error::{Error, Result};

/// Working precision used by [`QuadraticSurd::to_f64`].
pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// A real quadratic surd `a + b√D` with rational `a`, `b` and `D ≥ 0`.
///
/// When `D` is the square of a rational the value is folded into `a`, so a
/// nonzero `b` always means a genuinely irrational element. A surd with
/// `b = 0` is a rational and combines with surds of any radicand; two
/// irrational surds must share `D`.
#[derive(Clone, Debug)]
pub struct QuadraticSurd {
    a: Rational,
    b: Rational,
    d: Rational,
}

impl QuadraticSurd {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Result<Self> {
        if d.is_negative() {
            return Err(Error::NegativeRadicand(format_fraction(&d)));
        }
        let mut surd = QuadraticSurd { a, b, d };
        surd.normalize();
        Ok(surd)
    }

    /// `√D` itself.
    pub fn sqrt(d: Rational) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadraticSurd {
            a,
            b: Rational::zero(),
            d: Rational::zero(),
        }
    }

    /// Rational `a` viewed as an element of ℚ(√D).
    pub fn rational_in(a: Rational, d: &Rational) -> Self {
        QuadraticSurd {
            a,
            b: Rational::zero(),
            d: d.clone(),
        }
    }

    fn normalize(&mut self) {
        if self.b.is_zero() {
            return;
        }
        if let Some(root) = rational_sqrt(&self.d) {
            self.a += &self.b * root;
            self.b = Rational::zero();
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn conjugate(&self) -> Self {
        QuadraticSurd {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// Field norm `a² − b²D`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * &self.d
    }

    fn common_radicand(&self, rhs: &Self) -> Result<Rational> {
        match (self.is_rational(), rhs.is_rational()) {
            (false, false) if self.d != rhs.d => Err(Error::MismatchedRadicand {
                lhs: format_fraction(&self.d),
                rhs: format_fraction(&rhs.d),
            }),
            (false, _) => Ok(self.d.clone()),
            (true, false) => Ok(rhs.d.clone()),
            (true, true) => Ok(if self.d.is_zero() {
                rhs.d.clone()
            } else {
                self.d.clone()
            }),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let d = self.common_radicand(rhs)?;
        Self::new(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        let d = self.common_radicand(rhs)?;
        Self::new(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let d = self.common_radicand(rhs)?;
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &d;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Self::new(a, b, d)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let d = self.common_radicand(rhs)?;
        let inv = rhs.checked_inv()?;
        let mut quotient = self.checked_mul(&inv)?;
        if quotient.d.is_zero() {
            quotient.d = d;
        }
        Ok(quotient)
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/(a + b√D) = (a − b√D)/(a² − b²D); the norm is nonzero because
        // irrational surds never have a rational square root in D.
        let norm = self.norm();
        Self::new(&self.a / &norm, -&self.b / &norm, self.d.clone())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        QuadraticSurd {
            a: &self.a * factor,
            b: &self.b * factor,
            d: self.d.clone(),
        }
    }

    /// `self^e` by repeated squaring; `x^0 = 1`.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::rational_in(Rational::one(), &self.d);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact sign of the real value.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // Opposite signs: the larger of |a| and |b|√D wins.
        match (&self.a * &self.a).cmp(&(&self.b * &self.b * &self.d)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_f64_with_precision(DEFAULT_PRECISION_BITS)
            .expect("radicand is non-negative by construction")
    }

    /// Float approximation of `a + b√D`.
    ///
    /// `√D` is resolved to `precision_bits` fractional bits with an integer
    /// square root. When `a` and `b√D` have opposite signs the value is taken
    /// through the conjugate, `(a² − b²D)/(a − b√D)`, whose denominator has no
    /// cancellation, so the relative error stays at working precision.
    pub fn to_f64_with_precision(&self, precision_bits: u32) -> Result<f64> {
        if self.d.is_negative() {
            return Err(Error::NegativeRadicand(format_fraction(&self.d)));
        }
        if self.b.is_zero() {
            return Ok(self.a.to_f64().unwrap_or(f64::NAN));
        }
        let bits = precision_bits.max(64) as usize;
        let (u, v) = (self.d.numer(), self.d.denom());
        // √(u/v) = √(u·v)/v, with √(u·v) resolved to `bits` fractional bits.
        let scaled: BigInt = (u * v) << (2 * bits);
        let root = Rational::new(scaled.sqrt(), v.clone() << bits);
        let value = if self.a.is_zero() || self.a.is_positive() == self.b.is_positive() {
            &self.a + &self.b * root
        } else {
            self.norm() / (&self.a - &self.b * root)
        };
        Ok(value.to_f64().unwrap_or(f64::NAN))
    }

    /// Serialized form `{"a": "p/q", "b": "r/s", "D": "u/v"}`.
    pub fn to_json_fields(&self) -> SurdRecord {
        SurdRecord {
            a: format_fraction(&self.a),
            b: format_fraction(&self.b),
            d: format_fraction(&self.d),
        }
    }
}

impl PartialEq for QuadraticSurd {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadraticSurd {}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.checked_sub(other).ok().map(|diff| diff.signum())
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}√({})", self.a, sign, self.b.abs(), self.d)
    }
}

impl From<Rational> for QuadraticSurd {
    fn from(value: Rational) -> Self {
        Self::from_rational(value)
    }
}

impl Zero for QuadraticSurd {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        QuadraticSurd::is_zero(self)
    }
}

impl One for QuadraticSurd {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl Neg for QuadraticSurd {
    type Output = QuadraticSurd;

    fn neg(self) -> QuadraticSurd {
        QuadraticSurd {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Neg for &QuadraticSurd {
    type Output = QuadraticSurd;

    fn neg(self) -> QuadraticSurd {
        -self.clone()
    }
}

// Operator forms panic on mixed radicands or division by zero; the
// `checked_*` methods report those as errors instead.
macro_rules! surd_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadraticSurd> for &QuadraticSurd {
            type Output = QuadraticSurd;

            fn $method(self, rhs: &QuadraticSurd) -> QuadraticSurd {
                match self.$checked(rhs) {
                    Ok(value) => value,
                    Err(err) => panic!("{}", err),
                }
            }
        }

        impl $trait<QuadraticSurd> for QuadraticSurd {
            type Output = QuadraticSurd;

            fn $method(self, rhs: QuadraticSurd) -> QuadraticSurd {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&QuadraticSurd> for QuadraticSurd {
            type Output = QuadraticSurd;

            fn $method(self, rhs: &QuadraticSurd) -> QuadraticSurd {
                (&self).$method(rhs)
            }
        }

        impl $trait<QuadraticSurd> for &QuadraticSurd {
            type Output = QuadraticSurd;

            fn $method(self, rhs: QuadraticSurd) -> QuadraticSurd {
                self.$method(&rhs)
            }
        }
    };
}

surd_binop!(Add, add, checked_add);
surd_binop!(Sub, sub, checked_sub);
surd_binop!(Mul, mul, checked_mul);
surd_binop!(Div, div, checked_div);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurdRecord {
    pub a: String,
    pub b: String,
    #[serde(rename = "D")]
    pub d: String,
}

impl TryFrom<&SurdRecord> for QuadraticSurd {
    type Error = Error;

    fn try_from(record: &SurdRecord) -> Result<Self> {
        QuadraticSurd::new(
            parse_rational(&record.a, false)?,
            parse_rational(&record.b, false)?,
            parse_rational(&record.d, false)?,
        )
    }
}

impl Serialize for QuadraticSurd {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_fields().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadraticSurd {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let record = SurdRecord::deserialize(deserializer)?;
        QuadraticSurd::try_from(&record).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    fn surd(a: Rational, b: Rational, d: i64) -> QuadraticSurd {
        QuadraticSurd::new(a, b, int(d)).unwrap()
    }

    #[test]
    fn products_from_the_examples() {
        let r2 = QuadraticSurd::sqrt(int(2)).unwrap();
        assert_eq!(&r2 * &r2, QuadraticSurd::from_rational(int(2)));

        let p = surd(int(1), int(1), 2);
        let m = surd(int(1), int(-1), 2);
        assert_eq!(&p * &m, QuadraticSurd::from_rational(int(-1)));

        let x = surd(rat(1, 2), rat(1, 3), 5);
        let y = surd(int(2), int(3), 5);
        assert_eq!(&x * &y, surd(int(6), rat(13, 6), 5));
    }

    #[test]
    fn powers() {
        let x = surd(int(-1), int(1), 2);
        assert_eq!(x.pow(2), surd(int(3), int(-2), 2));
        assert_eq!(x.pow(3), surd(int(-7), int(5), 2));
        assert_eq!(surd(rat(3, 7), int(4), 7).pow(0), QuadraticSurd::one());
    }

    #[test]
    fn mixed_radicands_are_rejected() {
        let x = QuadraticSurd::sqrt(int(2)).unwrap();
        let y = QuadraticSurd::sqrt(int(3)).unwrap();
        assert!(matches!(
            x.checked_add(&y),
            Err(Error::MismatchedRadicand { .. })
        ));
        assert!(x.checked_mul(&y).is_err());
        // Rationals embed into every field.
        let two = QuadraticSurd::rational_in(int(2), &int(3));
        assert_eq!(x.checked_mul(&two).unwrap(), surd(int(0), int(2), 2));
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn operator_panics_on_mixed_radicands() {
        let _ = QuadraticSurd::sqrt(int(2)).unwrap() + QuadraticSurd::sqrt(int(5)).unwrap();
    }

    #[test]
    fn division_by_zero() {
        let x = QuadraticSurd::sqrt(int(2)).unwrap();
        assert_eq!(x.checked_div(&QuadraticSurd::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn division_via_conjugate() {
        let x = surd(int(1), int(1), 2);
        let y = surd(int(3), int(-2), 2);
        let q = x.checked_div(&y).unwrap();
        assert_eq!(&q * &y, x);
        assert_eq!(QuadraticSurd::one().checked_div(&surd(int(-1), int(1), 2)).unwrap(), surd(int(1), int(1), 2));
    }

    #[test]
    fn perfect_square_radicands_fold_into_rational_part() {
        let x = QuadraticSurd::new(int(1), int(2), rat(9, 4)).unwrap();
        assert!(x.is_rational());
        assert_eq!(x, QuadraticSurd::from_rational(int(4)));
        assert_eq!(QuadraticSurd::sqrt(int(1)).unwrap(), QuadraticSurd::one());
    }

    #[test]
    fn negative_radicand_is_rejected() {
        assert_eq!(
            QuadraticSurd::sqrt(int(-2)),
            Err(Error::NegativeRadicand("-2/1".into()))
        );
    }

    #[test]
    fn float_conversion() {
        let r2 = QuadraticSurd::sqrt(int(2)).unwrap();
        assert_eq!(r2.to_f64(), std::f64::consts::SQRT_2);
        assert_eq!(QuadraticSurd::rational_in(int(1), &int(7)).to_f64(), 1.0);
        // high-precision oracle: 0.41421356237309504880...
        assert_eq!(surd(int(-1), int(1), 2).to_f64(), 0.414_213_562_373_095_05);
        // heavy cancellation: (√2 − 1)^40 ≈ 5.1e-16
        let tiny = surd(int(-1), int(1), 2).pow(40);
        let expect = 0.414_213_562_373_095_05_f64.powi(40);
        assert!(((tiny.to_f64() - expect) / expect).abs() < 1e-13);
    }

    #[test]
    fn exact_sign_and_ordering() {
        let q = surd(int(-1), int(1), 2);
        assert_eq!(q.signum(), Ordering::Greater);
        assert_eq!((-&q).signum(), Ordering::Less);
        assert!(QuadraticSurd::sqrt(int(2)).unwrap() > QuadraticSurd::from_rational(rat(141, 100)));
        assert!(QuadraticSurd::sqrt(int(2)).unwrap() < QuadraticSurd::from_rational(rat(142, 100)));
        assert_eq!(
            QuadraticSurd::sqrt(int(2)).unwrap().partial_cmp(&QuadraticSurd::sqrt(int(3)).unwrap()),
            None
        );
    }

    #[test]
    fn display() {
        assert_eq!(surd(int(9), int(-6), 2).to_string(), "9-6√(2)");
        assert_eq!(surd(rat(1, 2), int(0), 2).to_string(), "1/2");
    }

    #[test]
    fn json_schema() {
        let x = QuadraticSurd::new(rat(1, 2), int(-3), rat(5, 4)).unwrap();
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"a":"1/2","b":"-3/1","D":"5/4"}"#);
        let back: QuadraticSurd = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<QuadraticSurd>(r#"{"a":"1","b":"1","D":"-2"}"#).is_err());
    }
}
