use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("surds live in different fields: sqrt({lhs}) vs sqrt({rhs})")]
    MismatchedRadicand { lhs: String, rhs: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("negative radicand {0} (complex surds are not supported)")]
    NegativeRadicand(String),

    #[error("state index n must be at least 1")]
    InvalidStateIndex,

    #[error("C({n}, {k}, {l}) is undefined: n - k - l < 0")]
    NegativeFactorialArgument { n: usize, k: usize, l: usize },

    #[error("level k = {kmax} is out of range for n = {n} (need k <= n - 1)")]
    LevelOutOfRange { n: usize, kmax: usize },

    #[error("zero divisor in the alpha recursion at n = {n}, k = {k}, m = {m}")]
    ZeroDivisor { n: usize, k: usize, m: usize },

    #[error("ansatz constraint system has nullity {nullity}, expected 1")]
    DegenerateSystem { nullity: usize },

    #[error("q-factor split needs j > m (got j = {j}, m = {m})")]
    SplitBelowMassIndex { j: usize, m: usize },

    #[error("theta = {0} is outside (0, pi); the phase function is singular")]
    SingularAngle(f64),

    #[error("bracket [{lo}, {hi}] contains {count} eigenvalues, expected exactly one")]
    BadBracket { lo: f64, hi: f64, count: usize },

    #[error("eigenvector tail does not decay (decay factor {0} >= 1)")]
    NonConvergentTail(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse {0:?} as an exact rational")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
