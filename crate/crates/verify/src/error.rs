use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown check {id:?}; available checks: {}", available.join(", "))]
    UnknownCheck { id: String, available: Vec<&'static str> },
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error(transparent)]
    Core(#[from] polylog_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
