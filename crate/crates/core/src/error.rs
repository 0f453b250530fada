use thiserror::Error;

/// Crate-wide error type.
///
/// Domain violations (bad dimensions, unnormalized states, out-of-range
/// parameters) are kept distinct from numerical breakdown (iteration caps,
/// indefinite radicands) so callers can map them to different exit paths.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian: asymmetry {residual:.3e} exceeds {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("state is not normalized: |norm - 1| = {0:.3e}")]
    NotNormalized(f64),

    #[error("loop parameter must be positive, got {0}")]
    NonPositiveLoop(f64),

    #[error("loop parameter {got} out of domain: requires {requires}")]
    LoopOutOfDomain { got: f64, requires: &'static str },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("braid normalization is singular at the requested spectral parameter")]
    SingularNormalization,

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("temperature must be positive, got {0}")]
    TemperatureNonPositive(f64),

    #[error("numerical breakdown: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
