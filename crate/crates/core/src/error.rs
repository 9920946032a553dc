use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("series precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("mismatched scalar contexts: {0}")]
    Mismatch(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("window error: {0}")]
    Window(String),
    #[error("unexpected pole: {0}")]
    Pole(String),
    #[error("rational reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown object: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;
