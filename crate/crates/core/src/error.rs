use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Exhaustive subset searches are capped; larger structures must go
    /// through the polynomial (closure-based) or numerical paths.
    #[error("tile count {count} exceeds the exhaustive-search cap of {cap}")]
    CapExceeded { count: usize, cap: usize },

    #[error("expected {expected} tensor factors, got {got}")]
    WrongArity { expected: usize, got: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("states {i} and {j} are not orthogonal: |inner| = {overlap:.3e}")]
    NotOrthogonal { i: usize, j: usize, overlap: f64 },

    #[error("invalid tile structure: {0}")]
    InvalidStructure(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("family `{family}` requires {requirement}")]
    ParameterOutOfRange {
        family: &'static str,
        requirement: String,
    },

    #[error("family `{family}` has no quoted partition for {view}")]
    NoQuotedPartition { family: &'static str, view: String },

    #[error("enumeration cap exceeded: {0}")]
    SweepCapExceeded(String),

    #[error("state set is empty")]
    EmptyStateSet,

    #[error("{0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
