use thiserror::Error;

#[derive(Debug, Error)]
pub enum DetectorError {
    /// Series shorter than one window.
    #[error("series has {len} samples, shorter than one window of {window}")]
    SeriesTooShort { len: usize, window: usize },

    /// Window shape violates its invariants (or would push c above 1).
    #[error("invalid window spec: {0}")]
    InvalidWindow(String),

    /// Channel subset empty or referencing unknown ids.
    #[error("invalid channel subset: {0}")]
    InvalidSubset(String),

    /// Spectral computation failed inside a window.
    #[error("window {window_index} (ending {window_end_s} s): {source}")]
    WindowComputation {
        window_index: usize,
        window_end_s: f64,
        #[source]
        source: rmt_core::RmtError,
    },

    /// Scoring or null-model computation failed.
    #[error(transparent)]
    Spectral(#[from] rmt_core::RmtError),

    /// Series access failed.
    #[error(transparent)]
    Series(#[from] dynsim::DynError),

    /// Reference window set unusable.
    #[error("reference windows unusable: {0}")]
    BadReference(String),

    /// Detection configuration rejected.
    #[error("invalid detection config: {0}")]
    InvalidConfig(String),

    /// Zero-sequence indicator needs exactly three current channels.
    #[error("zero-sequence indicator needs exactly 3 channels, got {got}")]
    NotThreePhase { got: usize },
}

pub type Result<T> = std::result::Result<T, DetectorError>;
