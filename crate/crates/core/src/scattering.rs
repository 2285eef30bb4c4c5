//! Interface matching for the sharp step: amplitude ratios, reflection and
//! transmission coefficients, group velocities and the piecewise stationary
//! solution they define.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::input::ScatteringInput;
use crate::regime::{classify_strict, Regime};
use crate::waves::{wave_number_step, Kappa, WaveNumbers};

/// Relative distance |k − κ|/max(k, κ) below which regime C is treated as
/// sitting on the resonant pole.
pub const POLE_TOL: f64 = 1e-12;

/// Amplitude ratios fixed by continuity of φ and dφ/dx at x = 0, with the
/// incident amplitude A₊ set to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Amplitudes {
    pub regime: Regime,
    pub waves: WaveNumbers,
    /// A₋/A₊
    pub ratio_reflect: Complex64,
    /// B₊/A₊
    pub ratio_transmit_particle: Complex64,
    /// B₋/A₊
    pub ratio_transmit_anti: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringSolution {
    pub regime: Regime,
    pub waves: WaveNumbers,
    pub ratio_reflect: Complex64,
    pub ratio_transmit_particle: Complex64,
    pub ratio_transmit_anti: Complex64,
    #[serde(rename = "R")]
    pub reflection: f64,
    #[serde(rename = "T")]
    pub transmission: f64,
    /// Group velocity of the incident wave, units of c.
    pub v_g_left: f64,
    /// Group velocity of the transmitted wave, units of c. Zero in regime B.
    pub v_g_right: f64,
}

pub fn amplitudes(input: &ScatteringInput) -> Result<Amplitudes> {
    let regime = classify_strict(input)?;
    let waves = wave_number_step(input)?;
    let k = waves.k;
    let zero = Complex64::new(0.0, 0.0);

    let (reflect, particle, anti) = match (regime, waves.kappa) {
        (Regime::A, Kappa::Propagating(kappa)) => {
            let sum = k + kappa;
            (
                Complex64::new((k - kappa) / sum, 0.0),
                Complex64::new(2.0 * k / sum, 0.0),
                zero,
            )
        }
        (Regime::B, Kappa::Evanescent(decay)) => {
            let norm = k * k + decay * decay;
            let conj = Complex64::new(k, -decay);
            (conj * conj / norm, conj * (2.0 * k / norm), zero)
        }
        (Regime::C, Kappa::Propagating(kappa)) => {
            let diff = k - kappa;
            if diff.abs() <= POLE_TOL * k.max(kappa) {
                return Err(KgError::Pole { k });
            }
            (
                Complex64::new((k + kappa) / diff, 0.0),
                zero,
                Complex64::new(2.0 * k / diff, 0.0),
            )
        }
        // The κ² sign and the classification inequalities agree away from the
        // boundary band, which classify_strict has already excluded.
        (regime, kappa) => {
            return Err(KgError::Domain(format!(
                "regime {regime} inconsistent with {} kappa",
                kappa.kind()
            )))
        }
    };

    Ok(Amplitudes {
        regime,
        waves,
        ratio_reflect: reflect,
        ratio_transmit_particle: particle,
        ratio_transmit_anti: anti,
    })
}

pub fn coefficients(input: &ScatteringInput) -> Result<ScatteringSolution> {
    let amps = amplitudes(input)?;
    let k = amps.waves.k;
    let kappa = amps.waves.kappa.magnitude();

    let (reflection, transmission, v_g_right) = match amps.regime {
        Regime::A => {
            let sum = k + kappa;
            let sum_sq = sum * sum;
            (
                (k - kappa) * (k - kappa) / sum_sq,
                4.0 * k * kappa / sum_sq,
                kappa / input.reduced_energy(),
            )
        }
        Regime::B => (1.0, 0.0, 0.0),
        Regime::C => {
            let diff = k - kappa;
            let transmission = -4.0 * k * kappa / (diff * diff);
            // R = (k + κ)²/(k − κ)² = 1 − T; taking it from T leaves a single
            // rounding in R + T when both are large near the pole.
            (1.0 - transmission, transmission, kappa / -input.reduced_energy())
        }
        Regime::Boundary => unreachable!("amplitudes() refuses boundary inputs"),
    };

    Ok(ScatteringSolution {
        regime: amps.regime,
        waves: amps.waves,
        ratio_reflect: amps.ratio_reflect,
        ratio_transmit_particle: amps.ratio_transmit_particle,
        ratio_transmit_anti: amps.ratio_transmit_anti,
        reflection,
        transmission,
        v_g_left: k / input.energy,
        v_g_right,
    })
}

impl Amplitudes {
    /// φ(x) and dφ/dx at `x` for the piecewise stationary solution with
    /// A₊ = 1. Points with x < 0 use the free-side branch, x ≥ 0 the step side.
    pub fn wavefunction(&self, x: f64) -> (Complex64, Complex64) {
        let i = Complex64::i();
        let k = self.waves.k;
        if x < 0.0 {
            let incident = (i * k * x).exp();
            let reflected = self.ratio_reflect * (-i * k * x).exp();
            (incident + reflected, i * k * (incident - reflected))
        } else {
            match self.waves.kappa {
                Kappa::Propagating(kappa) if self.regime == Regime::C => {
                    let phi = self.ratio_transmit_anti * (-i * kappa * x).exp();
                    (phi, -i * kappa * phi)
                }
                Kappa::Propagating(kappa) => {
                    let phi = self.ratio_transmit_particle * (i * kappa * x).exp();
                    (phi, i * kappa * phi)
                }
                Kappa::Evanescent(decay) => {
                    let phi = self.ratio_transmit_particle * (-decay * x).exp();
                    (phi, -decay * phi)
                }
                Kappa::Zero => (self.ratio_transmit_particle, Complex64::new(0.0, 0.0)),
            }
        }
    }

    /// Left and right limits of (φ, dφ/dx) at the interface.
    pub fn interface_values(&self) -> [(Complex64, Complex64); 2] {
        let left = {
            let r = self.ratio_reflect;
            let k = self.waves.k;
            (1.0 + r, Complex64::i() * k * (1.0 - r))
        };
        [left, self.wavefunction(0.0)]
    }
}

impl ScatteringSolution {
    pub fn amplitudes(&self) -> Amplitudes {
        Amplitudes {
            regime: self.regime,
            waves: self.waves,
            ratio_reflect: self.ratio_reflect,
            ratio_transmit_particle: self.ratio_transmit_particle,
            ratio_transmit_anti: self.ratio_transmit_anti,
        }
    }
}
