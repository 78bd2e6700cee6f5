use chart_core::BiDegree;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TodaError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown generator `{0}`")]
    UnknownAtom(String),
    #[error("{0}")]
    Provenance(String),
    #[error("bidegree mismatch: {detail}")]
    Structural { detail: String },
    #[error("no relation connects step {index}: `{from}` = `{to}`")]
    Gap { index: usize, from: String, to: String },
    #[error("inapplicable: {0}")]
    Inapplicable(String),
    #[error("inconsistent: {0}")]
    Inconsistent(String),
    #[error("replay failed at step {index}: {detail}")]
    Replay { index: usize, detail: String },
}

impl TodaError {
    pub fn structural(what: &str, want: BiDegree, got: BiDegree) -> Self {
        TodaError::Structural { detail: format!("{what} sits in {got}, expected {want}") }
    }
}

pub type Result<T> = std::result::Result<T, TodaError>;
