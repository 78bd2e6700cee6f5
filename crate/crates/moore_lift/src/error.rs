use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MooreError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("incomplete fixture: {0}")]
    IncompleteFixture(String),
    #[error("precondition: {0}")]
    Precondition(String),
    /// The defining span of a periodicity operator is not a single class.
    #[error("indeterminacy {}", span.join(", "))]
    Indeterminate { span: Vec<String> },
    #[error("step {step} fails {condition}: {detail}")]
    Failed { step: usize, condition: String, detail: String },
    #[error("inconsistent fixture: {0}")]
    Inconsistent(String),
}

impl MooreError {
    pub fn is_incomplete(&self) -> bool {
        matches!(self, MooreError::IncompleteFixture(_))
    }
}

pub type Result<T> = std::result::Result<T, MooreError>;
