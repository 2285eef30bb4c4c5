//! Classification of the step into the propagating (A), evanescent (B) and
//! pair-producing (C) classes, and the thresholds that separate them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::input::{CouplingMix, ScatteringInput, Threshold};

/// Relative tolerance on the defining inequalities.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// u < ε − 1: transmitted particle wave.
    A,
    /// ε − 1 < u < V_c: evanescent wave, total reflection.
    B,
    /// u > V_c: transmitted antiparticle wave, R > 1.
    C,
    /// u sits on ε − 1 or V_c within tolerance.
    Boundary,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::A => "A",
            Regime::B => "B",
            Regime::C => "C",
            Regime::Boundary => "boundary",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryDetail {
    /// u = ε − 1, the A/B edge.
    RestThreshold,
    /// u = V_c, the B/C edge.
    PairThreshold,
}

impl BoundaryDetail {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryDetail::RestThreshold => "rest_threshold",
            BoundaryDetail::PairThreshold => "pair_threshold",
        }
    }
}

impl fmt::Display for BoundaryDetail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub regime: Regime,
    /// Pair-production threshold V_c in units of mc².
    pub v_c: Threshold,
    /// Step height V_m = ε/g_t at which the localization bound is saturated.
    pub v_m: Threshold,
    pub boundary_detail: Option<BoundaryDetail>,
}

/// V_c = (ε + 1)/(2g_t − 1) for g_t > 1/2, infinite otherwise.
///
/// Accepts ε = 1 so the absolute minimum of the threshold can be evaluated.
pub fn pair_threshold(energy: f64, mix: CouplingMix) -> Threshold {
    let excess = mix.g_t - mix.g_s;
    if mix.g_t <= 0.5 || excess <= 0.0 {
        Threshold::Infinite
    } else {
        Threshold::Finite((energy + 1.0) / excess)
    }
}

/// V_m = ε/g_t, infinite for a pure scalar step.
pub fn localization_step(energy: f64, mix: CouplingMix) -> Threshold {
    if mix.g_t > 0.0 {
        Threshold::Finite(energy / mix.g_t)
    } else {
        Threshold::Infinite
    }
}

fn near(u: f64, edge: f64) -> bool {
    (u - edge).abs() <= BOUNDARY_TOL * u.abs().max(edge.abs())
}

pub fn classify(input: &ScatteringInput) -> RegimeReport {
    let u = input.step_height;
    let rest_edge = input.energy - 1.0;
    let v_c = pair_threshold(input.energy, input.mix);
    let v_m = localization_step(input.energy, input.mix);

    let (regime, boundary_detail) = if near(u, rest_edge) {
        (Regime::Boundary, Some(BoundaryDetail::RestThreshold))
    } else if v_c.finite().is_some_and(|vc| near(u, vc)) {
        (Regime::Boundary, Some(BoundaryDetail::PairThreshold))
    } else if u < rest_edge {
        (Regime::A, None)
    } else if v_c.exceeds(u) {
        (Regime::B, None)
    } else {
        (Regime::C, None)
    };

    RegimeReport { regime, v_c, v_m, boundary_detail }
}

/// Like [`classify`] but refuses boundary inputs.
pub fn classify_strict(input: &ScatteringInput) -> Result<Regime> {
    let report = classify(input);
    match (report.regime, report.boundary_detail) {
        (Regime::Boundary, Some(detail)) => Err(KgError::Boundary(detail)),
        (regime, _) => Ok(regime),
    }
}

/// Height (g_s − g_t)·u of the step seen by antiparticles. Positive means an
/// ascending (repulsive) step, negative a descending (attractive) one.
pub fn antiparticle_effective_step(input: &ScatteringInput) -> f64 {
    (input.mix.g_s - input.mix.g_t) * input.step_height
}
