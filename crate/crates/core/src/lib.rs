//! Exact eigenfunctions of the symmetric finite-difference discretisation of
//! the `l = 0` hydrogen radial equation, and the Pollaczek polynomials
//! `P_j^1(x; 0, −δ)` that describe them in the spectral variable.
//!
//! The numerical core is generic over [`numerics::Scalar`]: the same
//! recurrences and residual checks run in `f32`/`f64` or exactly in
//! ℚ(√D). The aliases below fix the common instantiations.

pub mod coordinate;
pub mod error;
pub mod numerics;
pub mod pollaczek;
pub mod spectral;

pub use error::{Error, Result};
pub use numerics::{QuadraticSurd, Rational, Real, Scalar, Tolerance};

/// Exact scalar: an element of ℚ(√D).
pub type Exact = numerics::QuadraticSurd;

pub type ExactSequence = pollaczek::PolynomialSequence<Exact>;
pub type FloatSequence = pollaczek::PolynomialSequence<f64>;

pub type ExactVector = spectral::SpectralVector<Exact>;
pub type FloatVector = spectral::SpectralVector<f64>;
