//! The scalar abstraction shared by exact and floating-point evaluation paths.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use super::rational::Rational;
use super::surd::QuadraticSurd;

/// Arithmetic needed by the recurrences and residual checks.
///
/// Implemented for `f32`, `f64`, [`Rational`] and [`QuadraticSurd`], so the
/// same code path runs in floating point or exactly.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_rational(value: &Rational) -> Self;

    fn from_usize(value: usize) -> Self {
        Self::from_rational(&Rational::from_integer(value.into()))
    }

    fn as_f64(&self) -> f64;

    fn magnitude(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// True when the value is exactly zero (floats: bitwise zero).
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Floating-point scalars: the float-only algorithms (Sturm bisection,
/// transcendental evaluation) are generic over this.
pub trait Real: Scalar + Float {}

impl Real for f32 {}
impl Real for f64 {}

impl Scalar for f64 {
    fn from_rational(value: &Rational) -> Self {
        ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
    }

    fn as_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_rational(value: &Rational) -> Self {
        ToPrimitive::to_f32(value).unwrap_or(f32::NAN)
    }

    fn as_f64(&self) -> f64 {
        f64::from(*self)
    }
}

impl Scalar for Rational {
    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }
}

impl Scalar for QuadraticSurd {
    fn from_rational(value: &Rational) -> Self {
        QuadraticSurd::from_rational(value.clone())
    }

    fn as_f64(&self) -> f64 {
        QuadraticSurd::to_f64(self)
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }
}
