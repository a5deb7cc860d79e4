//! Six-state chaotic power system: one generator bus feeding a dynamic load
//! bus, tied to a slack bus.
//!
//! State: (delta_m, s_m, E'_q, E_fd, delta_L, V_L) — generator angle, slip,
//! q-axis transient potential, excitation potential, load phase angle, load
//! bus voltage amplitude.
//!
//! The right-hand side references three algebraic quantities the state
//! equations do not define: the generator electrical power P_g, the d-axis
//! current I_d, and the terminal voltage V_t, plus the net active/reactive
//! power P, Q arriving at the load bus. These are supplied as pluggable
//! closures; [`AlgebraicClosures::default_network`] ships a documented
//! single-line network realization whose constants are configuration, not
//! asserted physical truth.

use std::sync::Arc;

use crate::error::{DynError, Result};
use crate::sim::run_fixed_step;
use crate::types::{Channel, ParameterSchedule, SimConfig, TimeSeries};

/// Machine, exciter, and load-model constants (per-unit unless noted).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Power3BusParams {
    /// Synchronous speed base, rad/s.
    pub omega_b: f64,
    /// Inertia constant, s.
    pub h: f64,
    /// Damping coefficient.
    pub d: f64,
    /// Mechanical power input.
    pub p_m: f64,
    /// d-axis open-circuit transient time constant, s.
    pub t_d0_prime: f64,
    /// d-axis synchronous reactance.
    pub x_d: f64,
    /// d-axis transient reactance.
    pub x_d_prime: f64,
    /// Exciter time constant, s.
    pub t_a: f64,
    /// Exciter gain.
    pub k_a: f64,
    /// Voltage reference setpoint.
    pub v_ref: f64,
    /// Load reactive-dynamics coefficients.
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    /// Shunt compensation susceptance.
    pub b_c: f64,
    /// Load active-dynamics coefficients.
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    /// Constant load offsets.
    pub p0: f64,
    pub q0: f64,
    pub p1d: f64,
    pub q1d: f64,
    /// Net power at the load bus when no closure overrides them.
    pub p: f64,
    pub q: f64,
}

impl Power3BusParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.t_d0_prime > 0.0 && self.t_a > 0.0) {
            return Err(DynError::InvalidConfig(
                "power3bus needs H > 0, T'_d0 > 0, T_A > 0".into(),
            ));
        }
        if self.q1 == 0.0 || self.p2 == 0.0 {
            return Err(DynError::InvalidConfig(
                "power3bus needs q1 != 0 and p2 != 0".into(),
            ));
        }
        Ok(())
    }

    /// Shipped default configuration.
    ///
    /// The load-side coefficients follow the sign structure of the classic
    /// dynamic load model (q1 < 0, q2 < 0); the offsets p0, q0, p_m, v_ref
    /// are back-solved so that the state returned by
    /// [`default_initial_state`](Self::default_initial_state) sits next to an
    /// unstable equilibrium of the default closure set. From there the
    /// trajectory departs onto a bounded, non-settling oscillation — the
    /// regime the spectral indicators are exercised on.
    pub fn default_config() -> Self {
        Self {
            omega_b: 100.0 * std::f64::consts::PI,
            h: 4.0,
            d: 0.05,
            p_m: 1.377391,
            t_d0_prime: 5.0,
            x_d: 1.2,
            x_d_prime: 0.3,
            t_a: 0.05,
            k_a: 100.0,
            v_ref: 0.956103,
            q1: -0.03,
            q2: -2.8,
            q3: 2.4,
            b_c: 0.3,
            p1: 0.4,
            p2: 2.55,
            p3: 0.3,
            p0: 0.897430,
            q0: 0.650458,
            p1d: 0.1,
            q1d: 0.05,
            p: 0.0,
            q: 0.0,
        }
    }

    /// Initial state paired with [`default_config`](Self::default_config):
    /// the underlying equilibrium with the load voltage nudged up 1%.
    pub fn default_initial_state() -> [f64; 6] {
        [0.5, 0.0, 1.0, 0.566274, 0.05, 0.9595]
    }

    pub fn set_param(&mut self, name: &str, value: f64) -> Result<()> {
        match name {
            "omega_b" => self.omega_b = value,
            "h" => self.h = value,
            "d" => self.d = value,
            "p_m" => self.p_m = value,
            "t_d0_prime" => self.t_d0_prime = value,
            "x_d" => self.x_d = value,
            "x_d_prime" => self.x_d_prime = value,
            "t_a" => self.t_a = value,
            "k_a" => self.k_a = value,
            "v_ref" => self.v_ref = value,
            "q1" => self.q1 = value,
            "q2" => self.q2 = value,
            "q3" => self.q3 = value,
            "b_c" => self.b_c = value,
            "p1" => self.p1 = value,
            "p2" => self.p2 = value,
            "p3" => self.p3 = value,
            "p0" => self.p0 = value,
            "q0" => self.q0 = value,
            "p1d" => self.p1d = value,
            "q1d" => self.q1d = value,
            "p" => self.p = value,
            "q" => self.q = value,
            _ => {
                return Err(DynError::UnknownParameter {
                    name: name.to_string(),
                    system: "power3bus",
                })
            }
        }
        self.validate()
    }
}

/// Instantaneous system state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Power3BusState {
    pub delta_m: f64,
    pub s_m: f64,
    pub e_q_prime: f64,
    pub e_fd: f64,
    pub delta_l: f64,
    pub v_l: f64,
}

impl Power3BusState {
    pub fn from_slice(x: &[f64]) -> Self {
        Self {
            delta_m: x[0],
            s_m: x[1],
            e_q_prime: x[2],
            e_fd: x[3],
            delta_l: x[4],
            v_l: x[5],
        }
    }

    pub fn to_array(self) -> [f64; 6] {
        [
            self.delta_m,
            self.s_m,
            self.e_q_prime,
            self.e_fd,
            self.delta_l,
            self.v_l,
        ]
    }
}

type Closure = Arc<dyn Fn(&Power3BusParams, &Power3BusState) -> f64 + Send + Sync>;

/// Pluggable algebraic relations closing the state equations.
#[derive(Clone)]
pub struct AlgebraicClosures {
    pub p_g: Closure,
    pub i_d: Closure,
    pub v_t: Closure,
    /// Net active power at the load bus; `None` falls back to `params.p`.
    pub p: Option<Closure>,
    /// Net reactive power at the load bus; `None` falls back to `params.q`.
    pub q: Option<Closure>,
}

impl std::fmt::Debug for AlgebraicClosures {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlgebraicClosures")
            .field("p", &self.p.is_some())
            .field("q", &self.q.is_some())
            .finish()
    }
}

impl AlgebraicClosures {
    /// Constant closures; P and Q fall back to the parameter values. Useful
    /// for decoupled experiments and unit tests.
    pub fn constant(p_g: f64, i_d: f64, v_t: f64) -> Self {
        Self {
            p_g: Arc::new(move |_, _| p_g),
            i_d: Arc::new(move |_, _| i_d),
            v_t: Arc::new(move |_, _| v_t),
            p: None,
            q: None,
        }
    }

    /// Default single-line network realization.
    ///
    /// The generator EMF E'_q (at angle delta_m) feeds the load bus through
    /// the transient reactance x'_d; a slack source `v_slack` at angle 0 is
    /// tied to the load bus through `x_e`. With dlt = delta_m - delta_L:
    ///
    /// - I_d = (E'_q - V_L cos dlt) / x'_d
    /// - P_g = E'_q V_L sin dlt / x'_d
    /// - V_t = midpoint voltage magnitude along x'_d
    /// - P, Q = net electrical power arriving at the load bus from both ties
    pub fn default_network(x_e: f64, v_slack: f64) -> Self {
        Self {
            p_g: Arc::new(|prm, st| {
                let dlt = st.delta_m - st.delta_l;
                st.e_q_prime * st.v_l * dlt.sin() / prm.x_d_prime
            }),
            i_d: Arc::new(|prm, st| {
                let dlt = st.delta_m - st.delta_l;
                (st.e_q_prime - st.v_l * dlt.cos()) / prm.x_d_prime
            }),
            v_t: Arc::new(|_prm, st| {
                let dlt = st.delta_m - st.delta_l;
                let re = 0.5 * (st.v_l + st.e_q_prime * dlt.cos());
                let im = 0.5 * st.e_q_prime * dlt.sin();
                (re * re + im * im).sqrt()
            }),
            p: Some(Arc::new(move |prm, st| {
                let dlt = st.delta_m - st.delta_l;
                st.e_q_prime * st.v_l * dlt.sin() / prm.x_d_prime
                    - v_slack * st.v_l * st.delta_l.sin() / x_e
            })),
            q: Some(Arc::new(move |prm, st| {
                let dlt = st.delta_m - st.delta_l;
                (st.e_q_prime * st.v_l * dlt.cos() - st.v_l * st.v_l) / prm.x_d_prime
                    + (v_slack * st.v_l * st.delta_l.cos() - st.v_l * st.v_l) / x_e
            })),
        }
    }
}

impl Default for AlgebraicClosures {
    /// Default tie reactance 0.5 p.u. to a 1.0 p.u. slack source.
    fn default() -> Self {
        Self::default_network(0.5, 1.0)
    }
}

/// Evaluate the six right-hand sides at a state.
pub fn power3bus_rhs(
    params: &Power3BusParams,
    closures: &AlgebraicClosures,
    state: &Power3BusState,
) -> [f64; 6] {
    let p_g = (closures.p_g)(params, state);
    let i_d = (closures.i_d)(params, state);
    let v_t = (closures.v_t)(params, state);
    let p_net = closures.p.as_ref().map_or(params.p, |f| f(params, state));
    let q_net = closures.q.as_ref().map_or(params.q, |f| f(params, state));

    let d_delta_m = params.omega_b * state.s_m;
    let d_s_m = (-params.d * state.s_m + params.p_m - p_g) / (2.0 * params.h);
    let d_e_q =
        (-state.e_q_prime + (params.x_d - params.x_d_prime) * i_d + state.e_fd) / params.t_d0_prime;
    let d_e_fd = (-state.e_fd + params.k_a * (params.v_ref - v_t)) / params.t_a;
    let d_delta_l = (q_net
        - params.q1d
        - params.q0
        - params.q2 * state.v_l
        - (params.q3 - params.b_c) * state.v_l * state.v_l)
        / params.q1;
    let d_v_l = (p_net - params.p1d - params.p0 - params.p3 * state.v_l - params.p1 * d_delta_l)
        / params.p2;
    [d_delta_m, d_s_m, d_e_q, d_e_fd, d_delta_l, d_v_l]
}

/// Simulate the six-state system; output channels are
/// (delta_m, s_m, E'_q, E_fd, delta_L, V_L).
pub fn simulate_power3bus(
    params: &Power3BusParams,
    closures: &AlgebraicClosures,
    schedule: &ParameterSchedule,
    cfg: &SimConfig,
) -> Result<TimeSeries> {
    params.validate()?;
    cfg.validate(6)?;
    cfg.validate_schedule(schedule)?;
    let channels = vec![
        Channel::new(1, "delta_m", "rad"),
        Channel::new(2, "s_m", ""),
        Channel::new(3, "e_q_prime", "p.u."),
        Channel::new(4, "e_fd", "p.u."),
        Channel::new(5, "delta_l", "rad"),
        Channel::new(6, "v_l", "p.u."),
    ];
    let closures = closures.clone();
    run_fixed_step(
        *params,
        schedule,
        cfg,
        channels,
        Power3BusParams::set_param,
        move |p, _t, x, dx| {
            let st = Power3BusState::from_slice(x);
            dx.copy_from_slice(&power3bus_rhs(p, &closures, &st));
        },
    )
}
