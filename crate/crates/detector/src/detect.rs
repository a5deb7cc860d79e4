//! Threshold-crossing event detection over window scores.

use crate::error::{DetectorError, Result};
use crate::les_series::LesSeries;
use crate::score::{reference_stats, ScoringMethod};

/// A flagged window.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionEvent {
    pub window_index: usize,
    pub time_s: f64,
    pub score: f64,
    pub method: ScoringMethod,
    pub channel_ids: Vec<u32>,
}

/// Threshold-crossing configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionConfig {
    pub method: ScoringMethod,
    pub threshold: f64,
    /// Half-open window-index range used by the reference-window method.
    pub reference: (usize, usize),
    /// Crossings within this many windows after an event are suppressed.
    pub min_gap: usize,
}

impl DetectionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.threshold.is_nan() || self.threshold <= 0.0 {
            return Err(DetectorError::InvalidConfig(format!(
                "threshold must be positive, got {}",
                self.threshold
            )));
        }
        if self.method == ScoringMethod::ReferenceWindow && self.reference.0 >= self.reference.1 {
            return Err(DetectorError::InvalidConfig(
                "reference-window method needs a non-empty reference range".into(),
            ));
        }
        Ok(())
    }
}

/// Emit an event at each upward threshold crossing of `scores`; crossings
/// within `min_gap` windows after an emitted event are suppressed. `times`
/// and `channel_ids` only annotate the events.
pub fn detect_changepoints(
    scores: &[f64],
    times: &[f64],
    cfg: &DetectionConfig,
    channel_ids: &[u32],
) -> Result<Vec<DetectionEvent>> {
    cfg.validate()?;
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(DetectorError::InvalidConfig("scores must be finite".into()));
    }
    let mut events = Vec::new();
    let mut last_emitted: Option<usize> = None;
    for (k, &s) in scores.iter().enumerate() {
        let rising = s >= cfg.threshold && (k == 0 || scores[k - 1] < cfg.threshold);
        if !rising {
            continue;
        }
        if let Some(prev) = last_emitted {
            if k - prev <= cfg.min_gap {
                continue;
            }
        }
        events.push(DetectionEvent {
            window_index: k,
            time_s: times.get(k).copied().unwrap_or(k as f64),
            score: s,
            method: cfg.method,
            channel_ids: channel_ids.to_vec(),
        });
        last_emitted = Some(k);
    }
    Ok(events)
}

/// Reference-window change-point detection with re-calibration after each
/// event.
///
/// A fixed reference cannot see a second change point: once tau shifts to a
/// new persistent level, the score stays above threshold and no further
/// upward crossing exists. This scanner re-anchors instead: score windows
/// against the current reference block; on a crossing, emit the event, skip
/// `settle` windows so the straddling transient clears, re-estimate the
/// reference from the next `reference_len` windows, and continue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RollingReferenceConfig {
    /// Windows per reference block (>= 8).
    pub reference_len: usize,
    pub threshold: f64,
    /// Windows skipped after an event before re-referencing.
    pub settle: usize,
}

pub fn detect_with_rolling_reference(
    series: &LesSeries,
    cfg: &RollingReferenceConfig,
) -> Result<Vec<DetectionEvent>> {
    if cfg.reference_len < 8 {
        return Err(DetectorError::InvalidConfig(
            "rolling reference needs at least 8 windows per block".into(),
        ));
    }
    if cfg.threshold.is_nan() || cfg.threshold <= 0.0 {
        return Err(DetectorError::InvalidConfig(
            "threshold must be positive".into(),
        ));
    }
    let n = series.len();
    let mut events = Vec::new();
    let mut block_start = 0usize;
    while block_start + cfg.reference_len <= n {
        let reference = (block_start, block_start + cfg.reference_len);
        let (mean, std) = reference_stats(series, reference)?;
        let mut crossed = None;
        for k in reference.1..n {
            let score = (series.tau[k] - mean).abs() / std;
            if score >= cfg.threshold {
                crossed = Some((k, score));
                break;
            }
        }
        match crossed {
            Some((k, score)) => {
                events.push(DetectionEvent {
                    window_index: k,
                    time_s: series.window_end_s[k],
                    score,
                    method: ScoringMethod::ReferenceWindow,
                    channel_ids: series.channel_ids.clone(),
                });
                block_start = k + cfg.settle;
            }
            None => break,
        }
    }
    Ok(events)
}
