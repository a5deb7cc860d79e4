use thiserror::Error;

/// Errors produced by the spectral-statistics layer.
#[derive(Debug, Error)]
pub enum RmtError {
    /// A matrix row has (numerically) zero variance and cannot be standardized.
    #[error("row {row} has zero variance (population std {std:.3e} <= 1e-12)")]
    ZeroVarianceRow { row: usize, std: f64 },

    /// A matrix entry is NaN or infinite.
    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    /// Matrix shape rejected by a constructor.
    #[error("invalid matrix shape: {0}")]
    InvalidShape(String),

    /// Aspect ratio outside the supported regime 0 < c <= 1.
    #[error("aspect ratio c = {c} outside (0, 1]")]
    AspectRatioOutOfRange { c: f64 },

    /// The symmetric eigen-solver failed to converge; no partial results are returned.
    #[error("symmetric eigen-solver did not converge for order {order}")]
    EigenNoConvergence { order: usize },

    /// A test function was evaluated outside its domain.
    #[error("test function domain error: {0}")]
    Domain(String),

    /// A quadrature or other numeric routine failed its stability check.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Not enough samples for the requested statistic.
    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },

    /// Sample set has zero variance; the statistic is undefined.
    #[error("zero variance in sample set; statistic undefined")]
    ZeroVariance,
}

pub type Result<T> = std::result::Result<T, RmtError>;
