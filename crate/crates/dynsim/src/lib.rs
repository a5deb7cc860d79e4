//! Deterministic simulation of two chaotic benchmark systems — the Lorenz
//! equations and a six-state single-machine power system — plus the fault
//! and noise synthesis used to build desk-scale recorder datasets.
//!
//! Everything here is a pure function of its inputs (and an explicit seed
//! where randomness is involved): identical inputs give bit-identical
//! outputs, which the downstream detection pipeline relies on.

mod error;
mod fault;
mod lorenz;
mod noise;
mod power3bus;
mod rk4;
mod sim;
mod types;

pub use error::{DynError, Result};
pub use fault::{inject_fault, FaultComponent, FaultSpec};
pub use lorenz::{simulate_lorenz, LorenzParams};
pub use noise::add_noise;
pub use power3bus::{
    power3bus_rhs, simulate_power3bus, AlgebraicClosures, Power3BusParams, Power3BusState,
};
pub use rk4::rk4_step;
pub use types::{Channel, ParameterSchedule, ScheduleEntry, SimConfig, TimeSeries};
