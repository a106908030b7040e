use thiserror::Error;

/// Errors across the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("index outside the family domain: {0}")]
    Domain(String),
    #[error("instance too large to enumerate: {0}")]
    TooLarge(String),
    #[error("seed too short: need at least {min} bits, got {got}")]
    SeedTooShort { min: usize, got: usize },
    #[error("unsupported output length: {0}")]
    UnsupportedLength(String),
    #[error("message length {got} does not match the scheme bound {want}")]
    MessageLengthMismatch { got: usize, want: usize },
    #[error("inadmissible key: {0}")]
    Key(String),
    #[error("support error: {0}")]
    Support(String),
    #[error("bound violation: {0}")]
    BoundViolation(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("distinguisher is not deterministic: {0}")]
    NondeterministicDistinguisher(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
