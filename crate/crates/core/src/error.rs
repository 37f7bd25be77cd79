use thiserror::Error;

/// Everything that can go wrong inside the library.
///
/// The variants are grouped so that callers (the CLI in particular) can map
/// them onto coarse exit categories with [`Error::category`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid gear: {0}")]
    InvalidGear(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("edge {edge} has non-integer length {length}")]
    NonIntegerLength { edge: usize, length: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("wavenumber must be positive, got {0}")]
    NonPositiveWavenumber(f64),

    #[error("k = {k} is not an eigenvalue root (sigma_min/sigma_max = {ratio:e})")]
    NotARoot { k: f64, ratio: f64 },

    #[error("x = {x} outside edge {edge} of length {length}")]
    OutOfRange { edge: usize, x: f64, length: f64 },

    #[error("transplantation is undefined for lambda = 0")]
    ZeroEigenvalue,

    #[error("transplanted function is inconsistent: {0}")]
    Inconsistent(String),

    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),

    #[error("weight {0} has no exact rational value")]
    IrrationalWeight(f64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("problem too large: {0}")]
    TooLarge(String),

    #[error("numerical anomaly: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Io,
    Validation,
    Numerical,
    Verification,
}

impl Error {
    pub fn category(&self) -> Category {
        match self {
            Error::Io(_) => Category::Io,
            Error::Numerical(_) => Category::Numerical,
            Error::Inconsistent(_) | Error::NotARoot { .. } => Category::Verification,
            _ => Category::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
