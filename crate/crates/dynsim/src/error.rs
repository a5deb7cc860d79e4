use thiserror::Error;

#[derive(Debug, Error)]
pub enum DynError {
    /// Rejected configuration (bad rates, schedule past the end, ...).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Schedule entry targets a parameter the system does not have.
    #[error("unknown parameter '{name}' for {system}")]
    UnknownParameter { name: String, system: &'static str },

    /// A derivative component came back NaN or infinite.
    #[error("non-finite derivative in component {component} at t = {t}")]
    NonFiniteDerivative { component: usize, t: f64 },

    /// A state component left the divergence bound.
    #[error("simulation diverged at t = {t}: |state[{component}]| = {value:.3e} > {bound:.3e}")]
    Diverged {
        t: f64,
        component: usize,
        value: f64,
        bound: f64,
    },

    /// Channel id not present in the series.
    #[error("channel {id} not found")]
    ChannelNotFound { id: u32 },

    /// Fault injection was asked to touch no channels.
    #[error("fault descriptor has an empty channel set")]
    EmptyChannelSet,

    /// SNR is undefined for a channel with no signal power.
    #[error("channel {id} has zero power; SNR is undefined")]
    ZeroPowerChannel { id: u32 },

    /// Series construction invariants violated.
    #[error("invalid time series: {0}")]
    InvalidSeries(String),
}

pub type Result<T> = std::result::Result<T, DynError>;
