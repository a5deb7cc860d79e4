//! Pipeline orchestration for the spectral situation-awareness toolkit:
//! configuration, file formats, the simulate/analyze/detect commands, and
//! the two end-to-end case reproductions.

pub mod args;
pub mod cases;
pub mod commands;
pub mod config;
pub mod error;
pub mod io;

pub use commands::{cmd_analyze, cmd_detect, cmd_simulate, AnalyzeArgs, DetectArgs};
pub use config::{EntityDescriptor, RunConfig};
pub use error::{CliError, Result};
