use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HratpError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("row exchange required at elimination step {step}, row {row}")]
    RowExchangeRequired { step: usize, row: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("HRA not guaranteed: {0}")]
    HraNotGuaranteed(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, HratpError>;
