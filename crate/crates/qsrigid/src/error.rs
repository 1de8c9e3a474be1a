use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("box mismatch: {0}")]
    BoxMismatch(String),
    #[error("ring mismatch: Gr({0},{1}) vs Gr({2},{3})")]
    RingMismatch(usize, usize, usize, usize),
    #[error("level violation: weight {weight:?} exceeds level {level}")]
    LevelViolation { weight: Vec<i64>, level: i64 },
    #[error("{m} is not coprime to {n}")]
    NotCoprime { m: i64, n: usize },
    #[error("grade is {0}, expected 0")]
    GradeNonzero(i64),
    #[error("cycle has codimension {0}, expected 1")]
    Codim(i64),
    #[error("inadmissible pair (a={a}, j={j})")]
    Inadmissible { a: usize, j: usize },
    #[error("bundle is not on the face: {0}")]
    NotOnFace(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("floating point residue {residue:e} exceeds tolerance (value {value})")]
    Precision { value: f64, residue: f64 },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("oracle disagreement: {what}: {left} vs {right}")]
    Disagreement { what: String, left: String, right: String },
}

impl Error {
    pub fn disagree(what: &str, left: impl std::fmt::Debug, right: impl std::fmt::Debug) -> Self {
        Error::Disagreement {
            what: what.to_string(),
            left: format!("{left:?}"),
            right: format!("{right:?}"),
        }
    }

    /// True for failures of an internal cross-check rather than of the input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Disagreement { .. } | Error::Precision { .. })
    }
}
