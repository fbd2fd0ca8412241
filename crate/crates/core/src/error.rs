use thiserror::Error;

/// Errors produced while loading specs, parsing words or running the
/// decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("the identity has no shortlex representative")]
    IdentityElement,
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("invalid independence relation: {0}")]
    InvalidIndependence(String),
    #[error("invalid generator order: {0}")]
    InvalidOrder(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown generator symbol `{0}`")]
    UnknownSymbol(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid syllable word: {0}")]
    InvalidSyllableWord(String),
    #[error("word is not in the kernel of the projection onto P x B")]
    NotInKernel,
    #[error("word is not reduced")]
    NotReduced,
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
