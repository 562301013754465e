//! Simulator and analysis toolkit for the driven three-level quantum
//! cooling cycle.
//!
//! The working medium is a three-level system (E1 = 0 < E2 < E3) coupled to
//! three thermal reservoirs and a resonant coherent drive:
//!
//! - the 1↔3 transition exchanges energy Δ31 with a *hot* bath (heat rejection),
//! - the 1↔2 transition exchanges energy Δ21 with a *cold* bath (heat removal),
//! - the 2↔3 transition exchanges energy Δ32 = Δ31 − Δ21 with both the drive
//!   and an *environmental* bath (spontaneous emission/absorption channel).
//!
//! The reduced dynamics is a Lindblad master equation, time-independent in
//! the frame rotating at the drive frequency ω = Δ32. The crate computes the
//! stationary state two independent ways (closed form and null-space solve),
//! converts it into cycle-averaged heat flows, power, entropy production and
//! coefficients of performance, integrates the dynamics in time, and runs the
//! parameter studies: cooling window, minimum drive coupling, cooling-rate
//! maximization, low-temperature scaling exponent, and absorption-chiller
//! characteristics.
//!
//! Units are chosen such that ħ = k_B = 1 throughout.

// Validation uses negated comparisons on purpose: `!(x > 0.0)` rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod figures;
mod linalg;
pub mod model;
pub mod output;
pub mod steady_state;
pub mod thermo;

pub use error::{Error, Result};
pub use model::{
    BathLabel, BathModel, BathSpec, DriveSpec, EquilibriumPopulations, LevelStructure, RateSet,
    Scenario,
};
pub use steady_state::{GeneratorMatrix, SteadyState};
pub use thermo::{EnergyFlows, ThermoReport};
