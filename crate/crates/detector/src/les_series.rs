//! Per-window LES computation over a sliding window.

use dynsim::TimeSeries;
use rmt_core::{covariance, eigenvalues_sym, les, TestFunction};

use crate::error::{DetectorError, Result};
use crate::window::{window_matrix, WindowSpec};

/// The LES indicator trace: one tau per window position.
#[derive(Debug, Clone, PartialEq)]
pub struct LesSeries {
    /// Timestamp of each window's last sample.
    pub window_end_s: Vec<f64>,
    pub tau: Vec<f64>,
    pub phi: String,
    /// Channel ids the indicator was computed on, in order.
    pub channel_ids: Vec<u32>,
    /// Per-window aspect ratio (all windows share one shape).
    pub c: f64,
    pub window: WindowSpec,
    pub standardized: bool,
    pub sample_rate: f64,
}

impl LesSeries {
    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn n_channels(&self) -> usize {
        self.channel_ids.len()
    }
}

/// Compute the LES trace of `series` over sliding windows.
///
/// Each window of the selected channels becomes an N x length matrix; with
/// `standardize` set, rows are centered and scaled per window before the
/// covariance (the null model assumes unit-variance entries). Zero-variance
/// channels surface as errors tagged with the window index.
pub fn les_series(
    series: &TimeSeries,
    spec: &WindowSpec,
    phi: &TestFunction,
    standardize: bool,
    subset: &[u32],
) -> Result<LesSeries> {
    if subset.is_empty() {
        return Err(DetectorError::InvalidSubset("empty channel subset".into()));
    }
    for &id in subset {
        if series.channel_index(id).is_err() {
            return Err(DetectorError::InvalidSubset(format!(
                "channel {id} not present in the series"
            )));
        }
    }
    spec.validate_for_channels(subset.len())?;
    let count = spec.count(series.len())?;

    let mut window_end_s = Vec::with_capacity(count);
    let mut tau = Vec::with_capacity(count);
    for k in 0..count {
        let (_, end) = spec.sample_range(k);
        let end_time = series.time_at(end - 1);
        let result: std::result::Result<f64, rmt_core::RmtError> = (|| {
            let m = window_matrix(series, spec, subset, k).map_err(|e| match e {
                DetectorError::Spectral(inner) => inner,
                other => rmt_core::RmtError::Numeric(other.to_string()),
            })?;
            let m = if standardize {
                m.standardize_rows()?
            } else {
                m
            };
            let eigs = eigenvalues_sym(&covariance(&m))?;
            les(&eigs, phi)
        })();
        match result {
            Ok(v) => {
                window_end_s.push(end_time);
                tau.push(v);
            }
            Err(source) => {
                return Err(DetectorError::WindowComputation {
                    window_index: k,
                    window_end_s: end_time,
                    source,
                })
            }
        }
    }

    Ok(LesSeries {
        window_end_s,
        tau,
        phi: phi.descriptor(),
        channel_ids: subset.to_vec(),
        c: subset.len() as f64 / spec.length as f64,
        window: *spec,
        standardized: standardize,
        sample_rate: series.sample_rate,
    })
}
