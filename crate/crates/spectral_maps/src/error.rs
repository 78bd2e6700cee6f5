use chart_core::{BiDegree, ChartError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error("window: {0}")]
    Window(String),
    #[error("component at {at} is not a homomorphism: {detail}")]
    IllDefined { at: BiDegree, detail: String },
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("inapplicable: {0}")]
    Inapplicable(String),
    #[error("incomplete fixture: {0}")]
    IncompleteFixture(String),
    #[error("domain: {0}")]
    Domain(String),
    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T, E = MapError> = std::result::Result<T, E>;
