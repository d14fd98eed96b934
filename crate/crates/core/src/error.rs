use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("operator family F_PRIME requires epsilon = 0 (got {0})")]
    FamilyMismatch(i64),

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("matrix dimension {dim} exceeds the cap of {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("relation {relation} failed: residual {residual:e} above tolerance {tol:e}")]
    Construction {
        relation: String,
        residual: f64,
        tol: f64,
    },

    #[error("internal arithmetic check failed: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
