//! Classical zero-sequence current indicator.
//!
//! The low-dimensional baseline the spectral indicator is compared against:
//! i0(t) = (iA + iB + iC) / 3 on a single recorder's current triple, reduced
//! to one RMS value per cycle.

use dynsim::TimeSeries;

use crate::error::{DetectorError, Result};

/// Per-cycle RMS of the instantaneous zero-sequence component.
///
/// `currents` must hold exactly the three phase currents of one feeder;
/// `cycle` is the cycle length in samples (>= 2). Trailing samples that do
/// not fill a whole cycle are dropped.
pub fn zero_sequence_indicator(currents: &TimeSeries, cycle: usize) -> Result<Vec<f64>> {
    if currents.n_channels() != 3 {
        return Err(DetectorError::NotThreePhase {
            got: currents.n_channels(),
        });
    }
    if cycle < 2 {
        return Err(DetectorError::InvalidConfig(format!(
            "cycle length must be >= 2 samples, got {cycle}"
        )));
    }
    let len = currents.len();
    let n_cycles = len / cycle;
    let (a, b, c) = (&currents.data[0], &currents.data[1], &currents.data[2]);
    let mut out = Vec::with_capacity(n_cycles);
    for k in 0..n_cycles {
        let mut acc = 0.0;
        for j in k * cycle..(k + 1) * cycle {
            let i0 = (a[j] + b[j] + c[j]) / 3.0;
            acc += i0 * i0;
        }
        out.push((acc / cycle as f64).sqrt());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use dynsim::Channel;

    fn phase_series(phases: [f64; 3], rate: f64, cycles: usize, spc: usize) -> TimeSeries {
        let n = cycles * spc;
        let omega = 2.0 * std::f64::consts::PI * rate / spc as f64;
        let chans = vec![
            Channel::new(4, "ia", "pu"),
            Channel::new(5, "ib", "pu"),
            Channel::new(6, "ic", "pu"),
        ];
        let data = phases
            .iter()
            .map(|&ph| {
                (0..n)
                    .map(|k| (omega * k as f64 / rate + ph).sin())
                    .collect()
            })
            .collect();
        TimeSeries::new(0.0, rate, chans, data).unwrap()
    }

    #[test]
    fn balanced_three_phase_cancels() {
        let third = 2.0 * std::f64::consts::PI / 3.0;
        let ts = phase_series([0.0, -third, third], 3200.0, 10, 64);
        let ind = zero_sequence_indicator(&ts, 64).unwrap();
        assert_eq!(ind.len(), 10);
        for v in ind {
            assert!(v < 1e-10, "residual {v}");
        }
    }

    #[test]
    fn common_mode_passes_through() {
        // All three phases identical unit sine: i0 = sin, per-cycle RMS 1/sqrt(2).
        let ts = phase_series([0.0, 0.0, 0.0], 3200.0, 5, 64);
        let ind = zero_sequence_indicator(&ts, 64).unwrap();
        for v in ind {
            assert_abs_diff_eq!(v, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-3);
        }
    }

    #[test]
    fn arity_is_enforced() {
        let chans = vec![Channel::new(1, "a", ""), Channel::new(2, "b", "")];
        let ts = TimeSeries::new(0.0, 100.0, chans, vec![vec![0.0; 10], vec![0.0; 10]]).unwrap();
        assert!(matches!(
            zero_sequence_indicator(&ts, 5),
            Err(DetectorError::NotThreePhase { got: 2 })
        ));
    }

    #[test]
    fn short_cycle_rejected() {
        let ts = phase_series([0.0, 0.0, 0.0], 3200.0, 2, 64);
        assert!(zero_sequence_indicator(&ts, 1).is_err());
    }
}
