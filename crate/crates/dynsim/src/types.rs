//! Time series, simulation configuration, and parameter schedules.

use crate::error::{DynError, Result};

/// Channel descriptor: a stable id plus a human-readable name and unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Channel {
    pub id: u32,
    pub name: String,
    pub unit: String,
}

impl Channel {
    pub fn new(id: u32, name: impl Into<String>, unit: impl Into<String>) -> Self {
        Self {
            id,
            name: name.into(),
            unit: unit.into(),
        }
    }
}

/// Uniformly sampled multi-channel time series.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub t0: f64,
    pub sample_rate: f64,
    pub channels: Vec<Channel>,
    /// One array per channel, all the same length.
    pub data: Vec<Vec<f64>>,
}

impl TimeSeries {
    pub fn new(
        t0: f64,
        sample_rate: f64,
        channels: Vec<Channel>,
        data: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if sample_rate <= 0.0 || !sample_rate.is_finite() {
            return Err(DynError::InvalidSeries(format!(
                "sample rate must be positive, got {sample_rate}"
            )));
        }
        if channels.len() != data.len() {
            return Err(DynError::InvalidSeries(format!(
                "{} channel descriptors but {} data arrays",
                channels.len(),
                data.len()
            )));
        }
        let len = data.first().map_or(0, Vec::len);
        if data.iter().any(|d| d.len() != len) {
            return Err(DynError::InvalidSeries(
                "channel arrays differ in length".into(),
            ));
        }
        let mut ids: Vec<u32> = channels.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != channels.len() {
            return Err(DynError::InvalidSeries("duplicate channel ids".into()));
        }
        Ok(Self {
            t0,
            sample_rate,
            channels,
            data,
        })
    }

    /// Number of samples per channel.
    pub fn len(&self) -> usize {
        self.data.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn n_channels(&self) -> usize {
        self.channels.len()
    }

    /// Timestamp of sample `k`.
    pub fn time_at(&self, k: usize) -> f64 {
        self.t0 + k as f64 / self.sample_rate
    }

    /// Position of a channel id within the series.
    pub fn channel_index(&self, id: u32) -> Result<usize> {
        self.channels
            .iter()
            .position(|c| c.id == id)
            .ok_or(DynError::ChannelNotFound { id })
    }

    /// New series containing only the requested channels, in the given order.
    pub fn select_channels(&self, ids: &[u32]) -> Result<TimeSeries> {
        let mut channels = Vec::with_capacity(ids.len());
        let mut data = Vec::with_capacity(ids.len());
        for &id in ids {
            let idx = self.channel_index(id)?;
            channels.push(self.channels[idx].clone());
            data.push(self.data[idx].clone());
        }
        TimeSeries::new(self.t0, self.sample_rate, channels, data)
    }
}

/// One scheduled parameter change.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleEntry {
    pub time_s: f64,
    pub param: String,
    pub value: f64,
}

/// Ordered list of parameter changes; times must be strictly increasing.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParameterSchedule {
    entries: Vec<ScheduleEntry>,
}

impl ParameterSchedule {
    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    pub fn new(entries: Vec<ScheduleEntry>) -> Result<Self> {
        for w in entries.windows(2) {
            if w[1].time_s <= w[0].time_s {
                return Err(DynError::InvalidConfig(format!(
                    "schedule times must be strictly increasing ({} then {})",
                    w[0].time_s, w[1].time_s
                )));
            }
        }
        if entries
            .iter()
            .any(|e| !e.time_s.is_finite() || e.time_s < 0.0)
        {
            return Err(DynError::InvalidConfig(
                "schedule times must be finite and >= 0".into(),
            ));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[ScheduleEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Latest scheduled time, if any.
    pub fn last_time(&self) -> Option<f64> {
        self.entries.last().map(|e| e.time_s)
    }
}

/// Fixed-step simulation configuration.
///
/// The integrator advances with step `dt`; output samples are taken every
/// `1 / sample_rate`, which must be an integer multiple of `dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub dt: f64,
    pub sample_rate: f64,
    pub duration: f64,
    pub initial_state: Vec<f64>,
    pub seed: u64,
    /// Per-component magnitude bound; exceeding it aborts with a divergence error.
    pub divergence_bound: f64,
}

impl SimConfig {
    /// Default integrator step: one tenth of the sample interval.
    pub fn new(sample_rate: f64, duration: f64, initial_state: Vec<f64>, seed: u64) -> Self {
        Self {
            dt: 1.0 / (10.0 * sample_rate),
            sample_rate,
            duration,
            initial_state,
            seed,
            divergence_bound: 1e6,
        }
    }

    pub fn with_dt(mut self, dt: f64) -> Self {
        self.dt = dt;
        self
    }

    pub fn with_divergence_bound(mut self, bound: f64) -> Self {
        self.divergence_bound = bound;
        self
    }

    /// Integrator steps between output samples.
    pub fn steps_per_sample(&self) -> Result<usize> {
        let ratio = 1.0 / (self.sample_rate * self.dt);
        let rounded = ratio.round();
        if rounded < 1.0 || (ratio - rounded).abs() > 1e-9 * rounded {
            return Err(DynError::InvalidConfig(format!(
                "sample interval 1/{} s is not an integer multiple of dt = {}",
                self.sample_rate, self.dt
            )));
        }
        Ok(rounded as usize)
    }

    /// Total output samples: duration * sample_rate, which must be integral.
    pub fn n_samples(&self) -> Result<usize> {
        let n = self.duration * self.sample_rate;
        let rounded = n.round();
        if rounded < 1.0 || (n - rounded).abs() > 1e-6 * rounded.max(1.0) {
            return Err(DynError::InvalidConfig(format!(
                "duration {} s at {} Hz is not a whole number of samples",
                self.duration, self.sample_rate
            )));
        }
        Ok(rounded as usize)
    }

    pub fn validate(&self, state_dim: usize) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(DynError::InvalidConfig(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.sample_rate > 0.0 && self.sample_rate.is_finite()) {
            return Err(DynError::InvalidConfig(format!(
                "sample rate must be positive, got {}",
                self.sample_rate
            )));
        }
        if !(self.duration > 0.0 && self.duration.is_finite()) {
            return Err(DynError::InvalidConfig(format!(
                "duration must be positive, got {}",
                self.duration
            )));
        }
        if self.initial_state.len() != state_dim {
            return Err(DynError::InvalidConfig(format!(
                "initial state has {} components, system needs {}",
                self.initial_state.len(),
                state_dim
            )));
        }
        if self.initial_state.iter().any(|v| !v.is_finite()) {
            return Err(DynError::InvalidConfig(
                "initial state must be finite".into(),
            ));
        }
        if self.divergence_bound.is_nan() || self.divergence_bound <= 0.0 {
            return Err(DynError::InvalidConfig(
                "divergence bound must be positive".into(),
            ));
        }
        self.steps_per_sample()?;
        self.n_samples()?;
        Ok(())
    }

    /// Schedules must not reference times at or past the end of the run.
    pub fn validate_schedule(&self, schedule: &ParameterSchedule) -> Result<()> {
        if let Some(last) = schedule.last_time() {
            if last >= self.duration {
                return Err(DynError::InvalidConfig(format!(
                    "schedule time {last} s is beyond the {} s duration",
                    self.duration
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_rejects_ragged_data() {
        let chans = vec![Channel::new(1, "a", ""), Channel::new(2, "b", "")];
        let err = TimeSeries::new(0.0, 10.0, chans, vec![vec![1.0, 2.0], vec![1.0]]);
        assert!(err.is_err());
    }

    #[test]
    fn series_rejects_duplicate_ids() {
        let chans = vec![Channel::new(1, "a", ""), Channel::new(1, "b", "")];
        let err = TimeSeries::new(0.0, 10.0, chans, vec![vec![0.0], vec![0.0]]);
        assert!(err.is_err());
    }

    #[test]
    fn select_channels_reorders() {
        let chans = vec![Channel::new(1, "a", ""), Channel::new(2, "b", "")];
        let ts = TimeSeries::new(0.0, 10.0, chans, vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let sel = ts.select_channels(&[2, 1]).unwrap();
        assert_eq!(sel.channels[0].id, 2);
        assert_eq!(sel.data[0], vec![3.0, 4.0]);
        assert!(ts.select_channels(&[9]).is_err());
    }

    #[test]
    fn schedule_requires_increasing_times() {
        let ok = ParameterSchedule::new(vec![
            ScheduleEntry {
                time_s: 1.0,
                param: "rho".into(),
                value: 30.0,
            },
            ScheduleEntry {
                time_s: 2.0,
                param: "rho".into(),
                value: 31.0,
            },
        ]);
        assert!(ok.is_ok());
        let bad = ParameterSchedule::new(vec![
            ScheduleEntry {
                time_s: 2.0,
                param: "rho".into(),
                value: 30.0,
            },
            ScheduleEntry {
                time_s: 2.0,
                param: "rho".into(),
                value: 31.0,
            },
        ]);
        assert!(bad.is_err());
    }

    #[test]
    fn config_step_ratio_must_divide() {
        let mut cfg = SimConfig::new(100.0, 1.0, vec![0.0], 0);
        assert_eq!(cfg.steps_per_sample().unwrap(), 10);
        cfg.dt = 0.003;
        assert!(cfg.steps_per_sample().is_err());
    }

    #[test]
    fn schedule_beyond_duration_rejected() {
        let cfg = SimConfig::new(100.0, 10.0, vec![0.0], 0);
        let sched = ParameterSchedule::new(vec![ScheduleEntry {
            time_s: 10.0,
            param: "rho".into(),
            value: 1.0,
        }])
        .unwrap();
        assert!(cfg.validate_schedule(&sched).is_err());
    }
}
