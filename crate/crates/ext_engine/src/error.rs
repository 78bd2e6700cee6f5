use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error("algebra: {0}")]
    Algebra(String),
    #[error("bidegree (stem {stem}, filtration {s}) lies outside the computed window")]
    Window { stem: i64, s: usize },
    #[error("resource budget of {budget} matrix entries exceeded at stage {stage}, internal degree {t}; complete through degree {complete_through}")]
    Resource { budget: usize, stage: usize, t: usize, complete_through: i64 },
    #[error("unknown class `{0}`")]
    UnknownClass(String),
}

pub type Result<T, E = ExtError> = std::result::Result<T, E>;
