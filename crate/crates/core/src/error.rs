use crate::algebra::Basis;
use crate::scalar::ScalarError;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("basis index {basis} out of range for dims ({n}|{m})")]
    IndexOutOfRange { basis: String, n: usize, m: usize },
    #[error("[{a}, {b}] has a component on {component}, which has the wrong parity")]
    GradingViolation { a: Basis, b: Basis, component: Basis },
    #[error("product [{a}, {b}] given twice")]
    DuplicateProduct { a: Basis, b: Basis },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("operator is not nilpotent within {0} powers")]
    NotNilpotent(usize),
    #[error("algebra is not nilpotent: the central series stabilises at dims ({0}|{1})")]
    NotNilpotentAlgebra(usize, usize),
    #[error("element has a nonzero odd component")]
    NotEven,
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("invalid family arguments: {0}")]
    Family(String),
    #[error("vector does not have the expected shape: {0}")]
    Shape(String),
    #[error("search space too large: {estimate} leaves (|coeffs|^free = {base}^{free}) exceeds budget {budget}")]
    BudgetExceeded { estimate: String, base: usize, free: usize, budget: u64 },
    #[error("invalid search spec: {0}")]
    Search(String),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
