use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element {0} is not a canonical residue of the field")]
    ElementOutOfRange(u64),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polynomial degree {degree} exceeds the bound {bound}")]
    DegreeTooHigh { degree: usize, bound: usize },
    #[error("evaluation points are not pairwise distinct")]
    DuplicatePoints,
    #[error("invalid code parameters: {0}")]
    InvalidParameters(String),
    #[error("exhaustive search needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("multiplier entry ({row}, {col}) is zero")]
    ZeroMultiplier { row: usize, col: usize },
    #[error("linear system is degenerate: null space has dimension {0}, expected 1")]
    DegenerateSystem(usize),
    #[error("no sparsity bound applies to (r, s, t) = ({r}, {s}, {t})")]
    CaseOutOfRange { r: usize, s: usize, t: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("element has multiplicative order {actual:?}, expected {expected}")]
    OrderMismatch { expected: usize, actual: Option<usize> },
    #[error("seed multiplier {0} is zero")]
    ZeroSeed(usize),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
