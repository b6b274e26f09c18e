use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix/vector shape or party-dimension mismatch.
    #[error("shape error: {0}")]
    Shape(String),

    /// Malformed or invalid input data (files, factors, plans with bad layout).
    #[error("invalid input: {0}")]
    Input(String),

    /// Parameters outside the mathematical domain of a construction
    /// (e.g. a party of dimension 2 can never carry a nonlocal product set).
    #[error("domain error: {0}")]
    Domain(String),

    /// A composition plan violating the connectivity or orthogonality
    /// assumptions of the graph composer.
    #[error("plan error: {0}")]
    Plan(String),

    /// A verifier job whose side dimension exceeds the configured cost cap.
    /// Callers record this as Inconclusive, never as a refutation.
    #[error("budget error: side dimension {side_dim} exceeds cap {cap}")]
    Budget { side_dim: usize, cap: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
