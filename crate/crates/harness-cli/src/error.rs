use thiserror::Error;

/// CLI-level errors carrying their process exit code:
/// 2 for usage/config problems, 3 for runtime/numeric failures.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn runtime(msg: impl Into<String>) -> Self {
        CliError::Runtime(msg.into())
    }
}

impl From<dynsim::DynError> for CliError {
    fn from(e: dynsim::DynError) -> Self {
        match e {
            dynsim::DynError::InvalidConfig(_)
            | dynsim::DynError::UnknownParameter { .. }
            | dynsim::DynError::InvalidSeries(_)
            | dynsim::DynError::ChannelNotFound { .. }
            | dynsim::DynError::EmptyChannelSet => CliError::Config(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<detector::DetectorError> for CliError {
    fn from(e: detector::DetectorError) -> Self {
        use detector::DetectorError as D;
        match e {
            D::SeriesTooShort { .. }
            | D::InvalidWindow(_)
            | D::InvalidSubset(_)
            | D::InvalidConfig(_)
            | D::BadReference(_)
            | D::NotThreePhase { .. } => CliError::Config(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<rmt_core::RmtError> for CliError {
    fn from(e: rmt_core::RmtError) -> Self {
        match e {
            rmt_core::RmtError::InvalidShape(_)
            | rmt_core::RmtError::AspectRatioOutOfRange { .. } => CliError::Config(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("i/o error: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
