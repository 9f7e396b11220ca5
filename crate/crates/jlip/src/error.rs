//! Crate-wide error type.

/// Everything that can go wrong when evaluating metrics, maps, or searches.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("point outside domain: {0}")]
    OutsideDomain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("evaluation at a pole: {0}")]
    Pole(String),

    #[error("coincident points give an undefined ratio")]
    CoincidentPoints,

    #[error("image escapes the target domain: {0}")]
    ImageOutsideTarget(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("search budget too small: {0}")]
    BudgetTooSmall(String),

    #[error("polynomial has a zero in the closed unit disk (|root| = {modulus})")]
    RootInDisk { modulus: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error onto.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::OutsideDomain(_)
            | Error::DimensionMismatch { .. }
            | Error::Pole(_)
            | Error::CoincidentPoints
            | Error::ImageOutsideTarget(_) => 3,
            Error::InvalidParameter(_) | Error::BudgetTooSmall(_) | Error::RootInDisk { .. } => 2,
        }
    }
}
