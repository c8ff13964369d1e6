use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {0} lies on or too close to a branch cut")]
    CutProximity(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("M = {m} and N = {n} are not coprime")]
    NotCoprime { m: u64, n: u64 },
    #[error("{0} is outside the strip of the integral representation")]
    OutOfStrip(String),
    #[error("{0} is at or too close to a pole")]
    PoleProximity(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
    #[error("contour height {height} is outside the admissible band ({lo}, {hi})")]
    BandViolation { height: f64, lo: f64, hi: f64 },
    #[error("lambda = {0} is not generic")]
    NonGenericLambda(f64),
    #[error("degenerate root: {0}")]
    DegenerateRoot(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::CutProximity(_) => "CutProximity",
            Error::DomainError(_) => "DomainError",
            Error::DivisionByZero(_) => "DivisionByZero",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::OutOfStrip(_) => "OutOfStrip",
            Error::PoleProximity(_) => "PoleProximity",
            Error::NoConvergence(_) => "NoConvergence",
            Error::NonFinite(_) => "NonFinite",
            Error::BandViolation { .. } => "BandViolation",
            Error::NonGenericLambda(_) => "NonGenericLambda",
            Error::DegenerateRoot(_) => "DegenerateRoot",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
