use thiserror::Error;

/// Errors raised by constructions and oracles in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {dim} exceeds the supported maximum of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty vertex list")]
    EmptyVertexSet,

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("polyhedron is empty")]
    Empty,

    #[error("enumeration budget exceeded: {requested} candidates requested, budget is {budget} ({context})")]
    BudgetExceeded {
        requested: String,
        budget: u64,
        context: String,
    },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("containment violated: {0}")]
    NotContained(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
