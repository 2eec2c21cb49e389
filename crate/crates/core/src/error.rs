use thiserror::Error;

/// Errors produced anywhere in the analysis pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("structure has {points} points, above the enumeration cap of {cap}")]
    Capacity { points: usize, cap: usize },

    #[error("point set {0} is not a hyperplane of this catalog")]
    NotAHyperplane(String),

    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("structural error: {0}")]
    Structural(String),

    #[error("labeling constraint violated: {0}")]
    Constraint(String),

    #[error("not a magic square: {0}")]
    NotMagic(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
