use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("axiom `{axiom}` fails: {witness}")]
    Axiom { axiom: String, witness: String },
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("truncation error: {0}")]
    Truncation(String),
    #[error("verification failure: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
