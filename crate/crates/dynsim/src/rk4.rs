//! Classical fixed-step 4th-order Runge-Kutta.
//!
//! Fixed step keeps runs bitwise reproducible; adaptive control would trade
//! that away for accuracy this toolkit does not need at desk scale.

use crate::error::{DynError, Result};

/// Advance `state` by one step of size `dt`.
///
/// `dynamics(t, state, deriv)` writes the derivative into `deriv`. Any
/// non-finite derivative component aborts with an error naming it.
pub fn rk4_step<F>(state: &[f64], t: f64, dt: f64, mut dynamics: F) -> Result<Vec<f64>>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(DynError::InvalidConfig(format!(
            "dt must be positive, got {dt}"
        )));
    }
    let mut scratch = Rk4Scratch::new(state.len());
    let mut out = state.to_vec();
    rk4_step_into(&mut out, t, dt, &mut scratch, &mut dynamics)?;
    Ok(out)
}

/// Reusable buffers for the four stage evaluations.
pub(crate) struct Rk4Scratch {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    stage: Vec<f64>,
}

impl Rk4Scratch {
    pub(crate) fn new(dim: usize) -> Self {
        Self {
            k1: vec![0.0; dim],
            k2: vec![0.0; dim],
            k3: vec![0.0; dim],
            k4: vec![0.0; dim],
            stage: vec![0.0; dim],
        }
    }
}

/// In-place RK4 step used by the simulators' hot loop.
pub(crate) fn rk4_step_into<F>(
    state: &mut [f64],
    t: f64,
    dt: f64,
    s: &mut Rk4Scratch,
    dynamics: &mut F,
) -> Result<()>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let half = 0.5 * dt;
    let blend = |stage: &mut [f64], state: &[f64], k: &[f64], w: f64| {
        for ((sg, &x), &d) in stage.iter_mut().zip(state).zip(k) {
            *sg = x + w * d;
        }
    };

    dynamics(t, state, &mut s.k1);
    check_finite(&s.k1, t)?;
    blend(&mut s.stage, state, &s.k1, half);
    dynamics(t + half, &s.stage, &mut s.k2);
    check_finite(&s.k2, t + half)?;
    blend(&mut s.stage, state, &s.k2, half);
    dynamics(t + half, &s.stage, &mut s.k3);
    check_finite(&s.k3, t + half)?;
    blend(&mut s.stage, state, &s.k3, dt);
    dynamics(t + dt, &s.stage, &mut s.k4);
    check_finite(&s.k4, t + dt)?;

    let sixth = dt / 6.0;
    for (i, x) in state.iter_mut().enumerate() {
        *x += sixth * (s.k1[i] + 2.0 * s.k2[i] + 2.0 * s.k3[i] + s.k4[i]);
    }
    Ok(())
}

fn check_finite(deriv: &[f64], t: f64) -> Result<()> {
    for (component, v) in deriv.iter().enumerate() {
        if !v.is_finite() {
            return Err(DynError::NonFiniteDerivative { component, t });
        }
    }
    Ok(())
}
