use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("multiplication table conflict at ({i}, {j})")]
    TableConflict { i: usize, j: usize },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix exponential input too large: Frobenius norm {norm} exceeds {limit}")]
    ExpmOverflow { norm: f64, limit: f64 },

    #[error("matrix is not symmetric within tolerance (asymmetry {asymmetry})")]
    NotSymmetric { asymmetry: f64 },

    #[error("no triality companion: law residual {residual} exceeds tolerance")]
    NoTrialityCompanion { residual: f64 },

    #[error("lift failed: triality system nullspace has dimension {dim}, expected 1")]
    LiftNullspace { dim: usize },

    #[error("lift failed: normalization impossible, form value {value}")]
    LiftNormalization { value: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("point is not on the complex unit sphere (constraint residual {residual})")]
    NotOnSphere { residual: f64 },

    #[error("frame construction failed: {0}")]
    Frame(String),

    #[error("reconstruction residual {residual} exceeds tolerance {tol}")]
    Residual { residual: f64, tol: f64 },

    #[error("complement has dimension {got}, expected {expected}")]
    ComplementRank { got: usize, expected: usize },

    #[error("unknown tag `{0}`")]
    UnknownTag(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed JSON input: {0}")]
    Parse(String),
}
