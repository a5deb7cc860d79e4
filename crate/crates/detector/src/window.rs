//! Moving sliding windows over a multi-channel series.

use dynsim::TimeSeries;
use rmt_core::DataMatrix;

use crate::error::{DetectorError, Result};

/// Fixed-length, fixed-stride window specification (in samples).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowSpec {
    pub length: usize,
    pub stride: usize,
}

impl WindowSpec {
    pub fn new(length: usize, stride: usize) -> Result<Self> {
        if length < 2 {
            return Err(DetectorError::InvalidWindow(format!(
                "length must be >= 2, got {length}"
            )));
        }
        if stride < 1 {
            return Err(DetectorError::InvalidWindow("stride must be >= 1".into()));
        }
        Ok(Self { length, stride })
    }

    /// Windows must be at least as long as the channel count so that the
    /// per-window aspect ratio c = N/length stays <= 1.
    pub fn validate_for_channels(&self, n_channels: usize) -> Result<()> {
        if self.length < n_channels {
            return Err(DetectorError::InvalidWindow(format!(
                "window length {} is below the channel count {n_channels} (c > 1)",
                self.length
            )));
        }
        Ok(())
    }

    /// Number of windows over a series of `len` samples.
    pub fn count(&self, len: usize) -> Result<usize> {
        if len < self.length {
            return Err(DetectorError::SeriesTooShort {
                len,
                window: self.length,
            });
        }
        Ok((len - self.length) / self.stride + 1)
    }

    /// Sample range [start, end) of window `k`.
    pub fn sample_range(&self, k: usize) -> (usize, usize) {
        let start = k * self.stride;
        (start, start + self.length)
    }
}

/// Materialize every window of the selected channels as a data matrix.
///
/// Window k covers samples [k*stride, k*stride + length); the count follows
/// floor((L - length) / stride) + 1.
pub fn sliding_windows(series: &TimeSeries, spec: &WindowSpec) -> Result<Vec<DataMatrix>> {
    let ids: Vec<u32> = series.channels.iter().map(|c| c.id).collect();
    let count = spec.count(series.len())?;
    (0..count)
        .map(|k| window_matrix(series, spec, &ids, k))
        .collect()
}

/// Extract window `k` of the given channels as an N x length matrix.
pub(crate) fn window_matrix(
    series: &TimeSeries,
    spec: &WindowSpec,
    channel_ids: &[u32],
    k: usize,
) -> Result<DataMatrix> {
    let (start, end) = spec.sample_range(k);
    let mut rows = Vec::with_capacity(channel_ids.len());
    for &id in channel_ids {
        let idx = series.channel_index(id)?;
        rows.push(series.data[idx][start..end].to_vec());
    }
    Ok(DataMatrix::from_rows(&rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dynsim::Channel;

    fn series(len: usize, channels: usize) -> TimeSeries {
        let chans: Vec<Channel> = (0..channels)
            .map(|i| Channel::new(i as u32 + 1, format!("c{i}"), ""))
            .collect();
        let data = (0..channels)
            .map(|i| (0..len).map(|k| (i * len + k) as f64).collect())
            .collect();
        TimeSeries::new(0.0, 100.0, chans, data).unwrap()
    }

    #[test]
    fn window_count_matches_formula() {
        let spec = WindowSpec::new(2000, 100).unwrap();
        assert_eq!(spec.count(18000).unwrap(), 161);
        let spec = WindowSpec::new(2000, 2000).unwrap();
        assert_eq!(spec.count(18000).unwrap(), 9);
    }

    #[test]
    fn short_series_rejected() {
        let spec = WindowSpec::new(2000, 100).unwrap();
        assert!(matches!(
            spec.count(1000),
            Err(DetectorError::SeriesTooShort {
                len: 1000,
                window: 2000
            })
        ));
    }

    #[test]
    fn windows_cover_expected_samples() {
        let ts = series(10, 2);
        let spec = WindowSpec::new(4, 3).unwrap();
        let wins = sliding_windows(&ts, &spec).unwrap();
        assert_eq!(wins.len(), 3);
        // Window 1 of channel 0 covers samples 3..7.
        assert_eq!(wins[1].entry(0, 0), 3.0);
        assert_eq!(wins[1].entry(0, 3), 6.0);
        // Channel 1 is offset by len in the fixture.
        assert_eq!(wins[2].entry(1, 0), 16.0);
    }

    #[test]
    fn c_above_one_rejected() {
        let spec = WindowSpec::new(4, 1).unwrap();
        assert!(spec.validate_for_channels(4).is_ok());
        assert!(spec.validate_for_channels(5).is_err());
    }

    #[test]
    fn degenerate_specs_rejected() {
        assert!(WindowSpec::new(1, 1).is_err());
        assert!(WindowSpec::new(10, 0).is_err());
    }
}
