use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A composition literal (or other input text) could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Arguments violate a structural precondition (length mismatch, empty
    /// composition, parameter out of range).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested series or integral diverges for the given index/argument.
    #[error("divergent: {0}")]
    Divergent(String),

    /// A numeric parameter lies outside the admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The evaluation could not reach the requested tolerance.
    #[error("accuracy not reached: requested {requested:e}, achieved {achieved:e}")]
    Accuracy { requested: f64, achieved: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
