use thiserror::Error;

/// Errors raised by the algebra kernels and the verification pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("attempted to invert zero")]
    ZeroInversion,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("points coincide")]
    EqualPoints,
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generators are not homogeneous")]
    NotHomogeneous,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("enumeration of {requested} points exceeds budget {budget}")]
    BudgetExceeded { requested: u128, budget: u128 },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("no stable slice count among trials {0:?}")]
    Inconclusive(Vec<usize>),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("multiplicity mismatch: claimed {claimed}, found {found}")]
    MultiplicityMismatch { claimed: u32, found: u32 },
    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
