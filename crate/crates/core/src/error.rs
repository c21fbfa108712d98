use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("lambda must exceed -1/2, got {0}")]
    InvalidLambda(f64),
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("argument {value} outside domain {domain}")]
    Domain { value: f64, domain: &'static str },
    #[error("operation requires a zero-mean function (mean coefficient {0:e})")]
    NonZeroMean(f64),
    #[error("spectral multiplier mismatch: {0}")]
    MultiplierMismatch(String),
    #[error("{0} supports dimensions up to 4 only, got {1}")]
    DimensionUnsupported(&'static str, usize),
    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    EigenNoConvergence(usize),
    #[error("truncation {size} is too small: {reason}")]
    TruncationTooSmall { size: usize, reason: String },
    #[error("tail of the sequence could not be certified monotone up to n = {0}")]
    TailNotCertified(usize),
    #[error("no sign change of the predicate on the supplied grid")]
    BracketFailure,
    #[error("truncation at degree {degree} leaves relative tail mass {tail:e}")]
    TruncationInsufficient { degree: usize, tail: f64 },
    #[error("request needs {requested} coefficients, limit is {limit}")]
    MemoryGuard { requested: usize, limit: usize },
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("quadrature lost orthogonality: residual {0:e}")]
    OrthogonalityLoss(f64),
    #[error("exact arithmetic requires {0}")]
    ExactUnavailable(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > -0.5 {
        Ok(())
    } else {
        Err(Error::InvalidLambda(lambda))
    }
}
