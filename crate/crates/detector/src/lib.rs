//! Sliding-window LES detection: window extraction, per-window spectral
//! statistics, null/reference scoring, threshold-crossing events, and the
//! classical zero-sequence baseline they are compared against.
//!
//! Window computations are independent and pure; detection itself is a
//! sequential fold over the ordered scores.

mod detect;
mod error;
mod les_series;
mod score;
mod window;
mod zero_seq;

pub use detect::{
    detect_changepoints, detect_with_rolling_reference, DetectionConfig, DetectionEvent,
    RollingReferenceConfig,
};
pub use error::{DetectorError, Result};
pub use les_series::{les_series, LesSeries};
pub use score::{reference_score, reference_stats, zscore_null, ScoringMethod};
pub use window::{sliding_windows, WindowSpec};
pub use zero_seq::zero_sequence_indicator;
