use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid dimension: N must be at least 2, got {0}")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {got} ({context})")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        context: &'static str,
    },

    #[error("matrix is not Hermitian: max deviation {deviation:.3e} exceeds {tolerance:.3e}")]
    NonHermitian { deviation: f64, tolerance: f64 },

    #[error("basis inconsistency: {0}")]
    BasisInconsistency(String),

    #[error("not a density matrix: {0}")]
    NotAState(String),

    #[error("precondition violated: state is not pure ({0})")]
    NotPure(String),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("insufficient moment orders: need 2..={need}, got up to {got}")]
    InsufficientMoments { need: usize, got: usize },

    #[error("spectrum trace is {0}, expected 1")]
    SpectrumTrace(f64),

    #[error("integration diverged at step {step}")]
    Divergence { step: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
