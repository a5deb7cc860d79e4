//! Additive fault injection for synthetic recorder data.
//!
//! A fault adds the same waveform — a zero-sequence style offset plus
//! transient components — to every affected channel over a half-open time
//! window. Untouched channels are copied bit-identically.

use crate::error::{DynError, Result};
use crate::types::TimeSeries;

/// One additive waveform component, evaluated at the offset `t - start`
/// into the fault window.
#[derive(Debug, Clone, PartialEq)]
pub enum FaultComponent {
    /// Constant offset.
    Offset { level: f64 },
    /// Sinusoid a * sin(2 pi f (t - start) + phase).
    Sine {
        amplitude: f64,
        freq_hz: f64,
        phase_rad: f64,
    },
    /// Decaying DC a * exp(-(t - start) / tau).
    DcDecay { amplitude: f64, tau_s: f64 },
}

impl FaultComponent {
    fn eval(&self, dt_into_fault: f64) -> f64 {
        match *self {
            FaultComponent::Offset { level } => level,
            FaultComponent::Sine {
                amplitude,
                freq_hz,
                phase_rad,
            } => {
                amplitude * (2.0 * std::f64::consts::PI * freq_hz * dt_into_fault + phase_rad).sin()
            }
            FaultComponent::DcDecay { amplitude, tau_s } => {
                amplitude * (-dt_into_fault / tau_s).exp()
            }
        }
    }
}

/// Fault descriptor: window, affected channels, additive profile.
#[derive(Debug, Clone, PartialEq)]
pub struct FaultSpec {
    /// Window start (inclusive), seconds.
    pub start_s: f64,
    /// Window end (exclusive), seconds.
    pub end_s: f64,
    pub channels: Vec<u32>,
    pub profile: Vec<FaultComponent>,
}

/// Apply `spec` to a copy of `series`. Samples with start <= t < end on the
/// affected channels receive the summed profile; everything else is
/// bit-identical to the input.
pub fn inject_fault(series: &TimeSeries, spec: &FaultSpec) -> Result<TimeSeries> {
    if spec.channels.is_empty() {
        return Err(DynError::EmptyChannelSet);
    }
    if spec.start_s.is_nan() || spec.end_s.is_nan() || spec.start_s >= spec.end_s {
        return Err(DynError::InvalidConfig(format!(
            "fault window [{}, {}) is empty or inverted",
            spec.start_s, spec.end_s
        )));
    }
    let t_end = series.t0 + series.len() as f64 / series.sample_rate;
    if spec.start_s < series.t0 - 1e-12 || spec.end_s > t_end + 1e-12 {
        return Err(DynError::InvalidConfig(format!(
            "fault window [{}, {}) outside the series span [{}, {})",
            spec.start_s, spec.end_s, series.t0, t_end
        )));
    }
    let mut indices = Vec::with_capacity(spec.channels.len());
    for &id in &spec.channels {
        indices.push(series.channel_index(id)?);
    }

    let mut out = series.clone();
    for k in 0..series.len() {
        let t = series.time_at(k);
        if t < spec.start_s || t >= spec.end_s {
            continue;
        }
        let add: f64 = spec.profile.iter().map(|c| c.eval(t - spec.start_s)).sum();
        for &idx in &indices {
            out.data[idx][k] += add;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Channel;

    fn three_phase(rate: f64, n: usize) -> TimeSeries {
        let omega = 2.0 * std::f64::consts::PI * 50.0;
        let chans = vec![
            Channel::new(4, "ia", "pu"),
            Channel::new(5, "ib", "pu"),
            Channel::new(6, "ic", "pu"),
        ];
        let data = (0..3)
            .map(|p| {
                (0..n)
                    .map(|k| {
                        let t = k as f64 / rate;
                        (omega * t - p as f64 * 2.0 * std::f64::consts::PI / 3.0).sin()
                    })
                    .collect()
            })
            .collect();
        TimeSeries::new(0.0, rate, chans, data).unwrap()
    }

    #[test]
    fn zero_magnitude_is_identity() {
        let ts = three_phase(3200.0, 640);
        let spec = FaultSpec {
            start_s: 0.05,
            end_s: 0.1,
            channels: vec![4, 5, 6],
            profile: vec![FaultComponent::Offset { level: 0.0 }],
        };
        let out = inject_fault(&ts, &spec).unwrap();
        assert_eq!(out, ts);
    }

    #[test]
    fn window_index_arithmetic() {
        // [1.0, 1.2) at 100 Hz touches exactly samples 100..120.
        let chans = vec![Channel::new(1, "a", "")];
        let ts = TimeSeries::new(0.0, 100.0, chans, vec![vec![0.0; 200]]).unwrap();
        let spec = FaultSpec {
            start_s: 1.0,
            end_s: 1.2,
            channels: vec![1],
            profile: vec![FaultComponent::Offset { level: 1.0 }],
        };
        let out = inject_fault(&ts, &spec).unwrap();
        for k in 0..200 {
            let expected = if (100..120).contains(&k) { 1.0 } else { 0.0 };
            assert_eq!(out.data[0][k], expected, "sample {k}");
        }
    }

    #[test]
    fn untouched_channels_bit_identical() {
        let ts = three_phase(3200.0, 640);
        let spec = FaultSpec {
            start_s: 0.1,
            end_s: 0.2,
            channels: vec![4],
            profile: vec![FaultComponent::Sine {
                amplitude: 0.5,
                freq_hz: 50.0,
                phase_rad: 0.0,
            }],
        };
        let out = inject_fault(&ts, &spec).unwrap();
        assert_eq!(out.data[1], ts.data[1]);
        assert_eq!(out.data[2], ts.data[2]);
        assert_ne!(out.data[0], ts.data[0]);
    }

    #[test]
    fn zero_sequence_offset_raises_phase_sum() {
        // Balanced three-phase sums to ~0; a common-mode injection shows up
        // directly in (ia + ib + ic) / 3 during the window.
        let ts = three_phase(3200.0, 640);
        let spec = FaultSpec {
            start_s: 0.1,
            end_s: 0.2,
            channels: vec![4, 5, 6],
            profile: vec![
                FaultComponent::Sine {
                    amplitude: 0.3,
                    freq_hz: 50.0,
                    phase_rad: 0.4,
                },
                FaultComponent::DcDecay {
                    amplitude: 0.2,
                    tau_s: 0.05,
                },
            ],
        };
        let out = inject_fault(&ts, &spec).unwrap();
        let i0 = |s: &TimeSeries, k: usize| (s.data[0][k] + s.data[1][k] + s.data[2][k]) / 3.0;
        let pre: f64 = (0..320).map(|k| i0(&out, k).abs()).fold(0.0, f64::max);
        let during: f64 = (320..640).map(|k| i0(&out, k).abs()).fold(0.0, f64::max);
        assert!(pre < 1e-12, "pre-fault zero-sequence {pre}");
        assert!(during > 0.1, "fault zero-sequence {during}");
    }

    #[test]
    fn empty_channel_set_rejected() {
        let ts = three_phase(3200.0, 64);
        let spec = FaultSpec {
            start_s: 0.0,
            end_s: 0.01,
            channels: vec![],
            profile: vec![],
        };
        assert!(matches!(
            inject_fault(&ts, &spec),
            Err(DynError::EmptyChannelSet)
        ));
    }

    #[test]
    fn window_outside_series_rejected() {
        let ts = three_phase(3200.0, 64);
        let spec = FaultSpec {
            start_s: 0.0,
            end_s: 10.0,
            channels: vec![4],
            profile: vec![],
        };
        assert!(inject_fault(&ts, &spec).is_err());
    }
}
