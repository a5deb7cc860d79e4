//! Shared fixed-step simulation loop with schedule application and
//! divergence guarding.

use crate::error::{DynError, Result};
use crate::rk4::{rk4_step_into, Rk4Scratch};
use crate::types::{Channel, ParameterSchedule, SimConfig, TimeSeries};

/// Run a parameterized ODE system at fixed step, sampling every
/// `1 / sample_rate`. Schedule entries are applied at the first integration
/// step whose start time is >= the scheduled time (resolved to step indices
/// up front, so floating-point drift in `k * dt` cannot shift them).
pub(crate) fn run_fixed_step<P, D>(
    mut params: P,
    schedule: &ParameterSchedule,
    cfg: &SimConfig,
    channels: Vec<Channel>,
    set_param: fn(&mut P, &str, f64) -> Result<()>,
    dynamics: D,
) -> Result<TimeSeries>
where
    D: Fn(&P, f64, &[f64], &mut [f64]),
{
    let n_samples = cfg.n_samples()?;
    let sps = cfg.steps_per_sample()?;
    let dt = cfg.dt;

    // Step index at which each schedule entry fires.
    let fire_steps: Vec<usize> = schedule
        .entries()
        .iter()
        .map(|e| (e.time_s / dt - 1e-9).ceil().max(0.0) as usize)
        .collect();

    let dim = cfg.initial_state.len();
    let mut state = cfg.initial_state.clone();
    let mut scratch = Rk4Scratch::new(dim);
    let mut data: Vec<Vec<f64>> = vec![Vec::with_capacity(n_samples); dim];
    let mut next_entry = 0usize;

    let record = |state: &[f64], data: &mut Vec<Vec<f64>>| {
        for (ch, &v) in data.iter_mut().zip(state.iter()) {
            ch.push(v);
        }
    };

    for sample in 0..n_samples {
        record(&state, &mut data);
        if sample + 1 == n_samples {
            break;
        }
        for step in sample * sps..(sample + 1) * sps {
            while next_entry < fire_steps.len() && fire_steps[next_entry] <= step {
                let e = &schedule.entries()[next_entry];
                set_param(&mut params, &e.param, e.value)?;
                next_entry += 1;
            }
            let t = step as f64 * dt;
            let mut f = |t: f64, x: &[f64], dx: &mut [f64]| dynamics(&params, t, x, dx);
            rk4_step_into(&mut state, t, dt, &mut scratch, &mut f)?;
            for (component, &v) in state.iter().enumerate() {
                if !v.is_finite() || v.abs() > cfg.divergence_bound {
                    return Err(DynError::Diverged {
                        t: (step + 1) as f64 * dt,
                        component,
                        value: v,
                        bound: cfg.divergence_bound,
                    });
                }
            }
        }
    }

    TimeSeries::new(0.0, cfg.sample_rate, channels, data)
}
