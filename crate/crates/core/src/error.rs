use thiserror::Error;

use crate::positivity::Verdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("Gamma has a pole at x = {0}")]
    Pole(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("odd-degree energy ratio {ratio:.3e} exceeds the evenness threshold")]
    Parity { ratio: f64 },

    #[error("function is not strictly positive (min = {min:.6e})")]
    NotStrictlyPositive { min: f64 },

    #[error("function is not positive (min = {min:.6e})")]
    NotPositive { min: f64 },

    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("representation mismatch: {0}")]
    KindMismatch(String),

    #[error("band limit {requested} exceeds operator capacity {capacity}")]
    CapacityExceeded { requested: usize, capacity: usize },

    #[error("operator is singular at degree {0}")]
    SingularOperator(usize),

    #[error("quadrature failed to converge: {0}")]
    QuadratureFailure(String),

    #[error("operator validation failed: {0}")]
    Validation(String),

    #[error("region too small: {0}")]
    RegionTooSmall(String),

    #[error("g^(p-1) is not a certified non-member (verdict: {0})")]
    PosMember(Verdict),

    #[error("counterexample synthesis failed: {0}")]
    SynthesisFailure(String),

    #[error("certificate rejected: {0}")]
    CertificateInvalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
