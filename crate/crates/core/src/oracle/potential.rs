use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::input::{CouplingMix, ScatteringInput};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    SharpStep,
    /// V(x) = u/(1 + e^{−x/w})
    LogisticStep,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialProfile {
    pub kind: ProfileKind,
    pub height: f64,
    /// Transition width; unused by the sharp step.
    pub width: f64,
    pub mix: CouplingMix,
}

impl PotentialProfile {
    pub fn sharp(height: f64, mix: CouplingMix) -> Result<Self> {
        check_height(height)?;
        Ok(PotentialProfile { kind: ProfileKind::SharpStep, height, width: 0.0, mix })
    }

    pub fn logistic(height: f64, width: f64, mix: CouplingMix) -> Result<Self> {
        check_height(height)?;
        if !(width.is_finite() && width > 0.0) {
            return Err(KgError::invalid(format!("logistic width must be positive, got {width}")));
        }
        Ok(PotentialProfile { kind: ProfileKind::LogisticStep, height, width, mix })
    }

    /// The sharp step this profile tends to as w → 0.
    pub fn asymptotic_input(&self, energy: f64) -> Result<ScatteringInput> {
        ScatteringInput::new(energy, self.height, self.mix)
    }

    /// V(x). The sharp step takes the midpoint value u/2 at x = 0.
    pub fn value(&self, x: f64) -> f64 {
        match self.kind {
            ProfileKind::SharpStep => {
                if x < 0.0 {
                    0.0
                } else if x > 0.0 {
                    self.height
                } else {
                    0.5 * self.height
                }
            }
            ProfileKind::LogisticStep => self.height / (1.0 + (-x / self.width).exp()),
        }
    }

    /// V(x) for a point belonging to the grid cell centred on `cell_mid`. For the
    /// sharp step the side of the discontinuity is taken from the cell, so a
    /// node at x = 0 never sees the midpoint value.
    pub(crate) fn value_in_cell(&self, x: f64, cell_mid: f64) -> f64 {
        match self.kind {
            ProfileKind::SharpStep => {
                if cell_mid < 0.0 {
                    0.0
                } else {
                    self.height
                }
            }
            ProfileKind::LogisticStep => self.value(x),
        }
    }

    /// Local wave number squared (ε − V_t)² − (1 + V_s)² for a given V.
    pub(crate) fn local_wave_sq(&self, energy: f64, v: f64) -> f64 {
        let v_t = self.mix.g_t * v;
        let v_s = self.mix.g_s * v;
        (energy - v_t) * (energy - v_t) - (1.0 + v_s) * (1.0 + v_s)
    }

    /// Largest |q| = |(ε − V_t)² − (1 + V_s)²| over 0 ≤ V ≤ u.
    pub(crate) fn max_abs_wave_sq(&self, energy: f64) -> f64 {
        // q is quadratic in V: check both ends and the vertex.
        let (g_t, g_s) = (self.mix.g_t, self.mix.g_s);
        let curvature = g_t * g_t - g_s * g_s;
        let mut candidates = vec![0.0, self.height];
        if curvature != 0.0 {
            let vertex = (energy * g_t + g_s) / curvature;
            if (0.0..=self.height).contains(&vertex) {
                candidates.push(vertex);
            }
        }
        candidates
            .into_iter()
            .map(|v| self.local_wave_sq(energy, v).abs())
            .fold(0.0, f64::max)
    }
}

fn check_height(height: f64) -> Result<()> {
    if !(height.is_finite() && height >= 0.0) {
        return Err(KgError::invalid(format!("step height must be non-negative, got {height}")));
    }
    Ok(())
}

/// U(x) = (V_s² − V_t²)/2 + V_s + ε·V_t, natural units.
pub fn effective_potential(profile: &PotentialProfile, energy: f64, x: f64) -> f64 {
    effective_potential_of(profile.mix, energy, profile.value(x))
}

pub(crate) fn effective_potential_of(mix: CouplingMix, energy: f64, v: f64) -> f64 {
    let v_t = mix.g_t * v;
    let v_s = mix.g_s * v;
    0.5 * (v_s * v_s - v_t * v_t) + v_s + energy * v_t
}
