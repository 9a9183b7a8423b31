use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(u32, u32),
    #[error("closure failed at {key}: {detail}")]
    ClosureFailure { key: String, detail: String },
    #[error("variation escapes the multiplet span at {0}")]
    SpanEscape(String),
    #[error("integrand is not integrable; obstruction {0}")]
    NotIntegrable(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("dressing leaves non-polynomial entry {0}")]
    InvalidDressing(String),
    #[error("{0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
