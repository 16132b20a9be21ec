use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
/// Index fields are 0-based; messages print them 1-based.
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("the parameter r must differ from 1")]
    REqualsOne,
    #[error("parameter {0} is zero")]
    ZeroParameter(&'static str),
    #[error("missing parameter p_{{{},{}}}", .i + 1, .j + 1)]
    MissingParameter { i: usize, j: usize },
    #[error("matrix size n must be at least 2, got {0}")]
    InvalidSize(usize),
    #[error("conductor m must be at least 2, got {0}")]
    InvalidConductor(u64),
    #[error("parameter key ({},{}) is not of the form 1 <= i < j <= n", .i + 1, .j + 1)]
    InvalidParameterKey { i: usize, j: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("RTT convention oracle is ambiguous ({passing} candidates pass)")]
    ConventionAmbiguous { passing: usize },
    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("group-like orders are undefined for formal (t-dependent) parameters")]
    FormalModeUnsupported,
}

pub type Result<T> = core::result::Result<T, Error>;
