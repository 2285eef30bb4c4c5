//! Independent numerical solution of the stationary equation
//!
//! ```text
//! −½ φ'' + U(x) φ = ½(ε² − 1) φ,   U = (V_s² − V_t²)/2 + V_s + ε V_t
//! ```
//!
//! for smoothed steps, used to check the closed forms in the sharp-step limit.

mod convergence;
mod flux;
mod integrate;
mod potential;

pub use convergence::{convergence_study, ConvergenceRow, ConvergenceTable, ERROR_FLOOR, FINAL_TOLERANCE};
pub use flux::{extract_fluxes, OracleResult, DRIFT_TOLERANCE};
pub use integrate::{
    integrate_stationary, sampled_closed_form, GridSpec, IntegrationConfig, StationarySolution,
};
pub use potential::{effective_potential, PotentialProfile, ProfileKind};
