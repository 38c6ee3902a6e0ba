use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// A proven inequality failed. This always means a bug in the library.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("combinatorial blowup: {subsets} subsets exceed cap {cap}")]
    CombinatorialBlowup { subsets: u128, cap: u128 },
    #[error("exponent m must be at least 2, got {0}")]
    InvalidM(u32),
    #[error("function is not a valid nonnegative concave profile: {0}")]
    NotConcave(String),
    #[error("concave-function inequality violated: {0}")]
    LemmaViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
