use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("trace {0} is not 1")]
    NotUnitTrace(f64),
    #[error("vector norm² {0} is not 1")]
    NotNormalized(f64),
    #[error("non-finite matrix entry")]
    NonFinite,
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("negative time t = {0}")]
    NegativeTime(f64),
    #[error("requested negative eigenvector of rank {requested}, operator has only {available}")]
    InsufficientNegatives { requested: usize, available: usize },
    #[error("outside validity domain: det T = {det} (requires det T < 0)")]
    OutOfDomain { det: f64 },
    #[error("success probability {0:e} too small; state filtered to null")]
    NullOutcome(f64),
    #[error("unknown {kind} '{label}'; valid options: {valid}")]
    UnknownLabel {
        kind: &'static str,
        label: String,
        valid: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
