use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivZero,
    #[error("polynomial division leaves a nonzero remainder")]
    NonDivisible,
    #[error("square root needs an even valuation with leading coefficient 1")]
    NotSquare,
    #[error("coefficient of z^-1 is nonzero; the antiderivative needs a logarithm")]
    ResidueNonzero,
    #[error("recurrence prefactor vanishes at step n = {index}")]
    DegenerateRecurrence { index: i64 },
    #[error("symmetric tridiagonal eigen solve failed for size {size}: {reason}")]
    EigenNonconvergence { size: usize, reason: String },
    #[error("hypergeometric series does not converge: {0}")]
    NoConvergence(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed serialized value: {0}")]
    Malformed(String),
}
