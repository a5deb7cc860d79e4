//! Run configuration: a single versioned JSON document validated before any
//! computation starts.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use dynsim::{
    AlgebraicClosures, LorenzParams, ParameterSchedule, Power3BusParams, ScheduleEntry, SimConfig,
};

use crate::error::{CliError, Result};

pub const CONFIG_VERSION: u32 = 1;

/// Top-level run configuration.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub version: u32,
    pub system: SystemConfig,
    #[serde(default)]
    pub schedule: Vec<ScheduleEntryConfig>,
    pub sim: SimSection,
    /// Additive Gaussian noise target; omit (or null) for a clean run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_snr_db: Option<f64>,
    /// Optional entity metadata (recorders, generators, loads).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entities: Vec<EntityDescriptor>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SystemConfig {
    Lorenz {
        sigma: f64,
        rho: f64,
        beta: f64,
    },
    Power3bus {
        params: Power3BusSection,
        /// Tie reactance to the slack bus used by the default closure set.
        x_e: f64,
        v_slack: f64,
    },
}

/// Serializable mirror of the power-system parameter block.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Power3BusSection {
    pub omega_b: f64,
    pub h: f64,
    pub d: f64,
    pub p_m: f64,
    pub t_d0_prime: f64,
    pub x_d: f64,
    pub x_d_prime: f64,
    pub t_a: f64,
    pub k_a: f64,
    pub v_ref: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub b_c: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p0: f64,
    pub q0: f64,
    pub p1d: f64,
    pub q1d: f64,
    pub p: f64,
    pub q: f64,
}

impl From<Power3BusParams> for Power3BusSection {
    fn from(p: Power3BusParams) -> Self {
        Self {
            omega_b: p.omega_b,
            h: p.h,
            d: p.d,
            p_m: p.p_m,
            t_d0_prime: p.t_d0_prime,
            x_d: p.x_d,
            x_d_prime: p.x_d_prime,
            t_a: p.t_a,
            k_a: p.k_a,
            v_ref: p.v_ref,
            q1: p.q1,
            q2: p.q2,
            q3: p.q3,
            b_c: p.b_c,
            p1: p.p1,
            p2: p.p2,
            p3: p.p3,
            p0: p.p0,
            q0: p.q0,
            p1d: p.p1d,
            q1d: p.q1d,
            p: p.p,
            q: p.q,
        }
    }
}

impl From<Power3BusSection> for Power3BusParams {
    fn from(s: Power3BusSection) -> Self {
        Power3BusParams {
            omega_b: s.omega_b,
            h: s.h,
            d: s.d,
            p_m: s.p_m,
            t_d0_prime: s.t_d0_prime,
            x_d: s.x_d,
            x_d_prime: s.x_d_prime,
            t_a: s.t_a,
            k_a: s.k_a,
            v_ref: s.v_ref,
            q1: s.q1,
            q2: s.q2,
            q3: s.q3,
            b_c: s.b_c,
            p1: s.p1,
            p2: s.p2,
            p3: s.p3,
            p0: s.p0,
            q0: s.q0,
            p1d: s.p1d,
            q1d: s.q1d,
            p: s.p,
            q: s.q,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScheduleEntryConfig {
    pub time_s: f64,
    pub param: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SimSection {
    pub sample_rate_hz: f64,
    pub duration_s: f64,
    /// Integrator step; defaults to one tenth of the sample interval.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt_s: Option<f64>,
    pub initial_state: Vec<f64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divergence_bound: Option<f64>,
}

/// Minimal virtual-entity metadata: a physical device mapped to channels.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EntityDescriptor {
    pub id: String,
    pub kind: String,
    pub channels: Vec<u32>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub attributes: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text).map_err(|e| {
            CliError::config(format!(
                "config {} line {} column {}: {e}",
                path.display(),
                e.line(),
                e.column()
            ))
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != CONFIG_VERSION {
            return Err(CliError::config(format!(
                "field 'version': expected {CONFIG_VERSION}, got {}",
                self.version
            )));
        }
        let state_dim = match &self.system {
            SystemConfig::Lorenz { sigma, rho, beta } => {
                LorenzParams::new(*sigma, *rho, *beta)
                    .map_err(|e| CliError::config(format!("field 'system': {e}")))?;
                3
            }
            SystemConfig::Power3bus { params, x_e, .. } => {
                let p: Power3BusParams = params.clone().into();
                p.validate()
                    .map_err(|e| CliError::config(format!("field 'system': {e}")))?;
                if *x_e == 0.0 {
                    return Err(CliError::config("field 'system.x_e': must be nonzero"));
                }
                6
            }
        };
        let sim = self.sim_config();
        sim.validate(state_dim)
            .map_err(|e| CliError::config(format!("field 'sim': {e}")))?;
        let schedule = self.schedule()?;
        sim.validate_schedule(&schedule)
            .map_err(|e| CliError::config(format!("field 'schedule': {e}")))?;
        if let Some(snr) = self.noise_snr_db {
            if snr.is_nan() {
                return Err(CliError::config("field 'noise_snr_db': must not be NaN"));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.entities {
            if !seen.insert(&e.id) {
                return Err(CliError::config(format!(
                    "field 'entities': duplicate id '{}'",
                    e.id
                )));
            }
            if e.channels.is_empty() {
                return Err(CliError::config(format!(
                    "field 'entities': entity '{}' has no channels",
                    e.id
                )));
            }
        }
        Ok(())
    }

    pub fn sim_config(&self) -> SimConfig {
        let mut cfg = SimConfig::new(
            self.sim.sample_rate_hz,
            self.sim.duration_s,
            self.sim.initial_state.clone(),
            self.sim.seed,
        );
        if let Some(dt) = self.sim.dt_s {
            cfg = cfg.with_dt(dt);
        }
        if let Some(bound) = self.sim.divergence_bound {
            cfg = cfg.with_divergence_bound(bound);
        }
        cfg
    }

    pub fn schedule(&self) -> Result<ParameterSchedule> {
        let entries = self
            .schedule
            .iter()
            .map(|e| ScheduleEntry {
                time_s: e.time_s,
                param: e.param.clone(),
                value: e.value,
            })
            .collect();
        ParameterSchedule::new(entries)
            .map_err(|e| CliError::config(format!("field 'schedule': {e}")))
    }

    pub fn closures(&self) -> Option<AlgebraicClosures> {
        match &self.system {
            SystemConfig::Lorenz { .. } => None,
            SystemConfig::Power3bus { x_e, v_slack, .. } => {
                Some(AlgebraicClosures::default_network(*x_e, *v_slack))
            }
        }
    }

    /// The 3-minute, 100 Hz Lorenz change-point protocol: rho 28 -> 30 at
    /// 60 s -> 31 at 120 s, started from a spun-up on-attractor state.
    pub fn lorenz_case(seed: u64) -> Self {
        RunConfig {
            version: CONFIG_VERSION,
            system: SystemConfig::Lorenz {
                sigma: 10.0,
                rho: 28.0,
                beta: 8.0 / 3.0,
            },
            schedule: vec![
                ScheduleEntryConfig {
                    time_s: 60.0,
                    param: "rho".into(),
                    value: 30.0,
                },
                ScheduleEntryConfig {
                    time_s: 120.0,
                    param: "rho".into(),
                    value: 31.0,
                },
            ],
            sim: SimSection {
                sample_rate_hz: 100.0,
                duration_s: 180.0,
                dt_s: None,
                initial_state: crate::cases::LORENZ_CASE_INITIAL_STATE.to_vec(),
                seed,
                divergence_bound: None,
            },
            noise_snr_db: None,
            entities: Vec::new(),
        }
    }
}
