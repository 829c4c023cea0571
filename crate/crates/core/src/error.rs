use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("coloring has {got} entries but the diagram has {expected} components")]
    ColoringArity { expected: usize, got: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("skein node budget of {0} exceeded")]
    BudgetExceeded(usize),

    #[error("series constant term is not invertible")]
    NotInvertible,

    #[error("exact division failed: {0}")]
    InexactDivision(String),

    #[error("input is not invariant under x -> -1/x")]
    NotBarInvariant,

    #[error("no monomial shift symmetrizes the Alexander polynomial")]
    NoSymmetrizingShift,

    #[error("potential function disagrees with the Conway polynomial: {0}")]
    BridgeMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant undefined: {0}")]
    Undefined(String),

    #[error("color violation at marked double point {0}")]
    ColorViolation(usize),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
