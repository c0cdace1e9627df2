//! Exact scalars and the shared float comparison policy.

mod rational;
mod scalar;
mod surd;
mod tolerance;

pub use rational::{
    binomial, factorial, format_fraction, int, parse_rational, pow2, rat, rational_pow,
    rational_sqrt, Rational,
};
pub use scalar::{Real, Scalar};
pub use surd::{QuadraticSurd, SurdRecord, DEFAULT_PRECISION_BITS};
pub use tolerance::Tolerance;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurdOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact field arithmetic in ℚ(√D).
pub fn surd_arith(lhs: &QuadraticSurd, rhs: &QuadraticSurd, op: SurdOp) -> Result<QuadraticSurd> {
    match op {
        SurdOp::Add => lhs.checked_add(rhs),
        SurdOp::Sub => lhs.checked_sub(rhs),
        SurdOp::Mul => lhs.checked_mul(rhs),
        SurdOp::Div => lhs.checked_div(rhs),
    }
}

pub fn surd_pow(x: &QuadraticSurd, e: u64) -> QuadraticSurd {
    x.pow(e)
}

pub fn surd_to_float(x: &QuadraticSurd, precision_bits: u32) -> Result<f64> {
    x.to_f64_with_precision(precision_bits)
}
