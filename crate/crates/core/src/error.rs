use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {element} outside the ground set [1, {n}]")]
    ElementOutOfRange { element: u64, n: u64 },

    #[error("duplicate element {0}")]
    DuplicateElement(u64),

    #[error("rank vector is not a bijection onto [1, {0}]")]
    NotABijection(usize),

    #[error("family is empty")]
    EmptyFamily,

    #[error("family members disagree on ground-set size ({expected} vs {found})")]
    MismatchedGroundSet { expected: u64, found: u64 },

    #[error("{work} units of work exceed the enumeration budget of {budget}")]
    BudgetExceeded { work: u128, budget: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("points are equal")]
    EqualPoints,

    #[error("point has wrong dimension or a coordinate outside [1, {b}]")]
    InvalidPoint { b: u32 },

    #[error("set of {size} elements is too small: need at least {needed}")]
    InsufficientGroundSet { size: usize, needed: u128 },

    #[error("fragment at tree vertex {vertex} became empty")]
    EmptyFragment { vertex: usize },

    #[error("subdivision failed validation: {0}")]
    InvalidSubdivision(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no verified family after {rounds} rounds ({size} members)")]
    RetriesExhausted { rounds: usize, size: usize },

    #[error("io error: {0}")]
    Io(String),

    #[error("malformed input: {0}")]
    Format(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
