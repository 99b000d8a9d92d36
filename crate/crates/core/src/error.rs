use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("evaluation hit a pole")]
    Pole,
    #[error("function is unbounded at infinity in variable {var}")]
    UnboundedAtInfinity { var: usize },
    #[error("unknown space label {0}")]
    UnknownLabel(String),
    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid parameter {field}: {reason}")]
    InvalidParams { field: String, reason: String },
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error("series order too small: need at least {needed}, got {got}")]
    SeriesOrder { needed: usize, got: usize },
    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
    #[error("term count {terms} exceeded the degree guard {limit}")]
    DegreeGuard { terms: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
