use crate::BiDegree;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartError {
    #[error("structural: {0}")]
    Structural(String),
    #[error("consistency: {0}")]
    Consistency(String),
    #[error("domain: {0}")]
    Domain(String),
    #[error("window: {0} lies outside the chart window")]
    Window(BiDegree),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("no cell at {0}")]
    MissingCell(BiDegree),
    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T, E = ChartError> = std::result::Result<T, E>;
