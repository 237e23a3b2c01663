use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported differentiation order {0} (expected 1, 2 or 3)")]
    UnsupportedOrder(u32),

    #[error("piece polynomial of degree {degree} exceeds the supported maximum {max}")]
    UnsupportedDegree { degree: usize, max: usize },

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error(
        "sampled signal has N = {samples} intervals but degree {degree} needs N >= {required}"
    )]
    InsufficientResolution {
        samples: usize,
        degree: usize,
        required: usize,
    },

    #[error("non-uniform grid at row {row}: t = {found}, expected {expected}")]
    NonUniformGrid {
        row: usize,
        found: f64,
        expected: f64,
    },

    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("frequency j = {j} is not above the truncation degree n = {n}")]
    OutOfRegime { n: usize, j: usize },

    #[error("ill-conditioned Galerkin system at n = {n} (condition estimate {condition:e})")]
    IllConditioned { n: usize, condition: f64 },

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("exponent a = {a} must lie in (0, 1/{p})")]
    InvalidExponent { a: f64, p: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("relative error undefined: exact signal has zero L2 norm")]
    UndefinedRatio,

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
