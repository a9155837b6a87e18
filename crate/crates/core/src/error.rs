use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An unknown occurs with degree >= 2 or with a non-constant coefficient.
    #[error("equation is not linear with constant coefficients in the unknowns: {0}")]
    NonLinear(String),
    #[error("inconsistent system: {0} = 0")]
    Inconsistent(String),
    #[error("expected a form of degree {expected}, got {found}")]
    Degree { expected: usize, found: String },
    #[error("form is not homogeneous: {0}")]
    MixedDegree(String),
    #[error("parse error at byte {position}: {reason}")]
    Parse { position: usize, reason: String },
    #[error("generator index {index} out of range for dimension {dimension}")]
    Index { index: usize, dimension: usize },
    #[error("d(e{0}) is already declared")]
    Redeclaration(usize),
    #[error("d(e{0}) has not been declared")]
    MissingDeclaration(usize),
    #[error("element is not in the span of the basis")]
    NotInSpan,
    #[error("coefficient {0} is not a constant")]
    NonConstant(String),
    #[error("unsupported: {0}")]
    UnsupportedKind(String),
    #[error("invalid dimension {0}")]
    Dimension(usize),
    #[error("exterior differential system is not linear: {0}")]
    NotLinear(String),
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
}
