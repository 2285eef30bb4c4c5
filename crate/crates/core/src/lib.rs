//! Scattering of spin-0 particles off a potential step with an arbitrary mix
//! of vector and scalar Lorentz couplings, described by the one-dimensional
//! Klein-Gordon equation.
//!
//! All quantities are dimensionless: energies in units of mc², lengths in
//! ħ/(mc), velocities in c. The closed-form results live in [`regime`],
//! [`scattering`], [`profile`] and [`localization`]; [`oracle`] solves the
//! stationary equation numerically for smoothed steps and is kept independent
//! of the closed forms so the two can check each other.

// `!(x > 0.0)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod gauge;
pub mod input;
pub mod localization;
pub mod nonrel;
pub mod output;
pub mod oracle;
pub mod profile;
pub mod regime;
pub mod scattering;
pub mod sweep;
pub mod units;
pub mod waves;

pub use error::{KgError, Result};
pub use gauge::{apply_phase, gauge_phase, gauge_phase_at};
pub use input::{CouplingMix, ScatteringInput, Threshold};
pub use localization::{
    localization, localization_minimizer_scan, LocalizationReport, MinimizerScan, ScanGrid,
};
pub use nonrel::schrodinger_step_reference;
pub use profile::{linspace, stationary_profile, StationaryProfile};
pub use regime::{
    antiparticle_effective_step, classify, classify_strict, localization_step, pair_threshold,
    BoundaryDetail, Regime, RegimeReport,
};
pub use scattering::{amplitudes, coefficients, Amplitudes, ScatteringSolution};
pub use units::{Dimension, UnitMode, UnitSystem};
pub use waves::{wave_number_free, wave_number_step, Kappa, WaveNumbers};
