use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("mode list is empty")]
    EmptyModes,
    #[error("duplicate mode label {0}")]
    DuplicateMode(String),
    #[error("unknown mode label {0}")]
    UnknownMode(String),
    #[error("total occupation {total} exceeds cutoff {cutoff}")]
    OccupationExceedsCutoff { total: usize, cutoff: usize },
    #[error("operands live on different spaces")]
    SpaceMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operator is not hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("expected the three modes m = +1, 0, -1")]
    WrongModeSet,
    #[error("invalid projection {0}, expected -1, 0 or +1")]
    InvalidProjection(i64),
    #[error("invalid multipole order {0}, expected 0 or 2")]
    InvalidOrder(u32),
    #[error("argument must be non-negative, got {0}")]
    NegativeArgument(f64),
    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(f64),
    #[error("invalid cavity: {0}")]
    InvalidCavity(String),
    #[error("invalid sampling: {0}")]
    InvalidSampling(String),
    #[error("invalid decay parameters: {0}")]
    InvalidDecayParams(String),
    #[error("quadrature did not converge on [{a}, {b}] (error estimate {estimate:e})")]
    QuadratureNonConvergence { a: f64, b: f64, estimate: f64 },
    #[error("singular matrix")]
    SingularMatrix,
}
