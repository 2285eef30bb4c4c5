use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::potential::PotentialProfile;
use crate::error::{KgError, Result};
use crate::regime::{classify_strict, Regime};
use crate::scattering::amplitudes;
use crate::waves::{wave_number_step, Kappa};

pub const MIN_STEPS: usize = 1000;
/// L must cover this many of the longest length scale.
pub const LENGTH_SCALE_FACTOR: f64 = 10.0;
/// Target h·k_max for the default step count.
const PHASE_PER_STEP: f64 = 0.05;
/// Steps per logistic width for the default step count.
const STEPS_PER_WIDTH: f64 = 16.0;

/// Grid overrides. Unset fields are chosen automatically.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct IntegrationConfig {
    pub domain_half_width: Option<f64>,
    pub step_count: Option<usize>,
}

/// Concrete uniform grid on [−L, L] with an even number of intervals, so that
/// x = 0 is a node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub half_width: f64,
    pub steps: usize,
}

impl GridSpec {
    pub fn node(&self, i: usize) -> f64 {
        let n = self.steps as f64;
        self.half_width * (2.0 * i as f64 - n) / n
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.steps).map(|i| self.node(i)).collect()
    }
}

impl IntegrationConfig {
    pub fn resolve(&self, profile: &PotentialProfile, energy: f64) -> Result<GridSpec> {
        let input = profile.asymptotic_input(energy)?;
        let waves = wave_number_step(&input)?;
        let mut scale = 1.0 / waves.k;
        if profile.kind == super::ProfileKind::LogisticStep {
            scale = scale.max(profile.width);
        }
        if let Kappa::Evanescent(decay) = waves.kappa {
            scale = scale.max(1.0 / decay);
        }
        let min_half_width = LENGTH_SCALE_FACTOR * scale;
        let half_width = match self.domain_half_width {
            Some(l) if !(l.is_finite() && l >= min_half_width * (1.0 - 1e-12)) => {
                return Err(KgError::invalid(format!(
                    "domain half-width {l} is below {LENGTH_SCALE_FACTOR}× the longest length scale ({min_half_width})"
                )))
            }
            Some(l) => l,
            None => min_half_width,
        };

        let steps = match self.step_count {
            Some(n) if n < MIN_STEPS => {
                return Err(KgError::invalid(format!("step count {n} is below {MIN_STEPS}")))
            }
            Some(n) => n + n % 2,
            None => {
                let k_max = profile.max_abs_wave_sq(energy).sqrt().max(waves.k);
                let mut h = PHASE_PER_STEP / k_max;
                if profile.kind == super::ProfileKind::LogisticStep {
                    h = h.min(profile.width / STEPS_PER_WIDTH);
                }
                let n = ((2.0 * half_width / h).ceil() as usize).max(MIN_STEPS);
                n + n % 2
            }
        };
        Ok(GridSpec { half_width, steps })
    }
}

/// φ and dφ/dx sampled on an ascending grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationarySolution {
    pub grid: GridSpec,
    pub xs: Vec<f64>,
    pub phi: Vec<Complex64>,
    pub dphi: Vec<Complex64>,
    /// Class of the asymptotic sharp step, which fixes the boundary condition.
    pub regime: Regime,
}

type State = [Complex64; 2];

/// Integrates φ'' = −q(x)φ, q = (ε − V_t)² − (1 + V_s)², from x = +L down to
/// x = −L with fixed-step classical RK4.
///
/// The right boundary carries only the outgoing or decaying wave of the
/// asymptotic step: e^{+iκx} in regime A, e^{−|κ|x} in regime B and the
/// negative-energy branch e^{−iκx} in regime C. The local κ at x = L is used so
/// that a logistic tail that has not fully saturated still starts on a pure mode.
pub fn integrate_stationary(
    profile: &PotentialProfile,
    energy: f64,
    config: &IntegrationConfig,
) -> Result<StationarySolution> {
    let input = profile.asymptotic_input(energy)?;
    let regime = classify_strict(&input)?;
    let grid = config.resolve(profile, energy)?;
    let n = grid.steps;
    let l = grid.half_width;

    let q_edge = profile.local_wave_sq(energy, profile.value_in_cell(l, l));
    let i = Complex64::i();
    let start: State = match regime {
        Regime::A | Regime::C if q_edge > 0.0 => {
            let kappa = q_edge.sqrt();
            let sign = if regime == Regime::A { 1.0 } else { -1.0 };
            let phi = (i * sign * kappa * l).exp();
            [phi, i * sign * kappa * phi]
        }
        Regime::B if q_edge < 0.0 => {
            let decay = (-q_edge).sqrt();
            // e^{−|κ|L}, clamped away from underflow for oversized domains
            let phi = Complex64::new((-(decay * l).min(600.0)).exp(), 0.0);
            [phi, -decay * phi]
        }
        _ => {
            return Err(KgError::Domain(format!(
                "local wave number at x = L (q = {q_edge}) does not match regime {regime}"
            )))
        }
    };

    let mut phi = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut dphi = phi.clone();
    phi[n] = start[0];
    dphi[n] = start[1];
    let mut state = start;

    for idx in (0..n).rev() {
        let x_hi = grid.node(idx + 1);
        let x_lo = grid.node(idx);
        let mid = 0.5 * (x_hi + x_lo);
        let q = |x: f64| profile.local_wave_sq(energy, profile.value_in_cell(x, mid));
        state = rk4_step(state, x_hi, x_lo - x_hi, q);
        if !(state[0].re.is_finite()
            && state[0].im.is_finite()
            && state[1].re.is_finite()
            && state[1].im.is_finite())
        {
            return Err(KgError::Divergence { x: x_lo });
        }
        phi[idx] = state[0];
        dphi[idx] = state[1];
    }

    Ok(StationarySolution { grid, xs: grid.nodes(), phi, dphi, regime })
}

fn rk4_step(y: State, x: f64, h: f64, q: impl Fn(f64) -> f64) -> State {
    let f = |x: f64, s: State| -> State { [s[1], -q(x) * s[0]] };
    let add = |s: State, k: State, c: f64| -> State { [s[0] + k[0] * c, s[1] + k[1] * c] };
    let k1 = f(x, y);
    let k2 = f(x + 0.5 * h, add(y, k1, 0.5 * h));
    let k3 = f(x + 0.5 * h, add(y, k2, 0.5 * h));
    let k4 = f(x + h, add(y, k3, h));
    let w = h / 6.0;
    [
        y[0] + (k1[0] + k2[0] * 2.0 + k3[0] * 2.0 + k4[0]) * w,
        y[1] + (k1[1] + k2[1] * 2.0 + k3[1] * 2.0 + k4[1]) * w,
    ]
}

/// The exact piecewise sharp-step solution sampled on the oracle grid, for
/// pushing through the same flux extraction as an integrated solution.
pub fn sampled_closed_form(
    profile: &PotentialProfile,
    energy: f64,
    config: &IntegrationConfig,
) -> Result<StationarySolution> {
    let input = profile.asymptotic_input(energy)?;
    let amps = amplitudes(&input)?;
    let grid = config.resolve(profile, energy)?;
    let xs = grid.nodes();
    let (phi, dphi) = xs.iter().map(|&x| amps.wavefunction(x)).unzip();
    Ok(StationarySolution { grid, xs, phi, dphi, regime: amps.regime })
}
