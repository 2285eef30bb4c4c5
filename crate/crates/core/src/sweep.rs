//! One-parameter sweeps over (ε, u, g_t) producing one record per grid point.

use std::fmt;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::input::{CouplingMix, ScatteringInput, Threshold};
use crate::localization::localization;
use crate::oracle::{extract_fluxes, integrate_stationary, IntegrationConfig, PotentialProfile};
use crate::regime::{classify, BoundaryDetail, Regime};
use crate::scattering::coefficients;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    Energy,
    StepHeight,
    #[serde(rename = "g_t")]
    VectorCoupling,
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepParameter::Energy => "energy",
            SweepParameter::StepHeight => "step_height",
            SweepParameter::VectorCoupling => "g_t",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    /// Fixed values; the swept one is ignored.
    pub energy: f64,
    pub step_height: f64,
    pub g_t: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(KgError::invalid(format!(
                "sweep needs start < stop, got {} .. {}",
                self.start, self.stop
            )));
        }
        if self.points < 2 {
            return Err(KgError::invalid(format!("sweep needs at least 2 points, got {}", self.points)));
        }
        let (lo, hi) = (self.start, self.stop);
        match self.parameter {
            SweepParameter::Energy if lo <= 1.0 => {
                return Err(KgError::invalid(format!("swept energy must stay above 1, starts at {lo}")))
            }
            SweepParameter::StepHeight if lo <= 0.0 => {
                return Err(KgError::invalid(format!("swept step height must stay positive, starts at {lo}")))
            }
            SweepParameter::VectorCoupling if lo < 0.0 || hi > 1.0 => {
                return Err(KgError::invalid(format!("swept g_t must stay in [0, 1], got {lo} .. {hi}")))
            }
            _ => {}
        }
        if self.parameter != SweepParameter::StepHeight && !(self.step_height > 0.0) {
            return Err(KgError::invalid(format!("step height must be positive, got {}", self.step_height)));
        }
        // Builds an input at the start to validate the fixed parameters.
        self.input_at(self.start).map(|_| ())
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (i as f64) / last
                }
            })
            .collect()
    }

    pub fn input_at(&self, value: f64) -> Result<ScatteringInput> {
        let (e, u, g_t) = match self.parameter {
            SweepParameter::Energy => (value, self.step_height, self.g_t),
            SweepParameter::StepHeight => (self.energy, value, self.g_t),
            SweepParameter::VectorCoupling => (self.energy, self.step_height, value),
        };
        ScatteringInput::new(e, u, CouplingMix::vector_fraction(g_t)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    Ok,
    Boundary,
    Pole,
}

impl RecordStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RecordStatus::Ok => "ok",
            RecordStatus::Boundary => "boundary",
            RecordStatus::Pole => "pole",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleColumns {
    pub width: f64,
    #[serde(rename = "R_numeric")]
    pub r_numeric: f64,
    pub current_drift: f64,
    pub converged: bool,
}

/// One sweep row. R and T are present exactly when `status` is `Ok`, in which
/// case R + T = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub index: usize,
    pub input: ScatteringInput,
    pub regime: Regime,
    pub boundary_detail: Option<BoundaryDetail>,
    pub status: RecordStatus,
    #[serde(rename = "R")]
    pub reflection: Option<f64>,
    #[serde(rename = "T")]
    pub transmission: Option<f64>,
    pub v_c: Threshold,
    pub v_m: Threshold,
    /// Evanescent decay length 1/(2|κ|), regime B only.
    pub delta_x: Option<f64>,
    pub oracle: Option<OracleColumns>,
}

impl OutputRecord {
    pub fn evaluate(index: usize, input: ScatteringInput) -> Result<Self> {
        let report = classify(&input);
        let mut record = OutputRecord {
            index,
            input,
            regime: report.regime,
            boundary_detail: report.boundary_detail,
            status: RecordStatus::Ok,
            reflection: None,
            transmission: None,
            v_c: report.v_c,
            v_m: report.v_m,
            delta_x: None,
            oracle: None,
        };
        match coefficients(&input) {
            Ok(sol) => {
                record.reflection = Some(sol.reflection);
                record.transmission = Some(sol.transmission);
            }
            Err(KgError::Boundary(_)) => record.status = RecordStatus::Boundary,
            Err(KgError::Pole { .. }) => record.status = RecordStatus::Pole,
            Err(e) => return Err(e),
        }
        if record.regime == Regime::B {
            record.delta_x = Some(localization(&input)?.delta_x);
        }
        Ok(record)
    }

    fn attach_oracle(&mut self, width: f64, config: &IntegrationConfig) -> Result<()> {
        if self.status != RecordStatus::Ok {
            return Ok(());
        }
        let profile = PotentialProfile::logistic(self.input.step_height, width, self.input.mix)?;
        let sol = integrate_stationary(&profile, self.input.energy, config)?;
        let fluxes = extract_fluxes(&sol, &profile, self.input.energy)?;
        self.oracle = Some(OracleColumns {
            width,
            r_numeric: fluxes.r_numeric,
            current_drift: fluxes.current_drift,
            converged: fluxes.converged,
        });
        Ok(())
    }
}

/// Oracle settings for sweeps that also integrate a logistic step per row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOracle {
    pub width: f64,
    pub config: IntegrationConfig,
}

/// Evaluates every grid point. Rows are computed on scoped worker threads and
/// returned in grid order.
pub fn run_sweep(spec: &SweepSpec, oracle: Option<SweepOracle>) -> Result<Vec<OutputRecord>> {
    spec.validate()?;
    let values = spec.values();
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(values.len());
    let chunk = values.len().div_ceil(workers);

    let chunks: Vec<Result<Vec<OutputRecord>>> = thread::scope(|scope| {
        let handles: Vec<_> = values
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                scope.spawn(move || {
                    part.iter()
                        .enumerate()
                        .map(|(j, &v)| {
                            let mut rec = OutputRecord::evaluate(c * chunk + j, spec.input_at(v)?)?;
                            if let Some(o) = oracle {
                                rec.attach_oracle(o.width, &o.config)?;
                            }
                            Ok(rec)
                        })
                        .collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });

    let mut rows = Vec::with_capacity(values.len());
    for part in chunks {
        rows.extend(part?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(parameter: SweepParameter, start: f64, stop: f64, points: usize) -> SweepSpec {
        SweepSpec { parameter, start, stop, points, energy: 2.0, step_height: 5.0, g_t: 1.0 }
    }

    #[test]
    fn coupling_sweep_crosses_pair_threshold_once() {
        let rows = run_sweep(&spec(SweepParameter::VectorCoupling, 0.0, 1.0, 11), None).unwrap();
        assert_eq!(rows.len(), 11);
        let regimes: Vec<Regime> = rows.iter().map(|r| r.regime).collect();
        // V_c(g_t) = 3/(2g_t − 1) = 5 at g_t = 0.8
        assert_eq!(regimes[8], Regime::Boundary);
        assert_eq!(rows[8].status, RecordStatus::Boundary);
        assert!(regimes[..8].iter().all(|&r| r == Regime::B));
        assert!(regimes[9..].iter().all(|&r| r == Regime::C));
        for r in &rows {
            match r.status {
                RecordStatus::Ok => {
                    assert!((r.reflection.unwrap() + r.transmission.unwrap() - 1.0).abs() < 1e-12)
                }
                _ => assert!(r.reflection.is_none()),
            }
        }
    }

    #[test]
    fn step_sweep_locates_decay_minimum() {
        let mut s = spec(SweepParameter::StepHeight, 1.0, 3.0, 2001);
        s.energy = 2.0;
        let rows = run_sweep(&s, None).unwrap();
        assert_eq!(rows[0].status, RecordStatus::Boundary);
        assert_eq!(rows[2000].status, RecordStatus::Boundary);
        let best = rows
            .iter()
            .filter_map(|r| r.delta_x.map(|d| (r.input.step_height, d)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!((best.0 - 2.0).abs() <= 1e-3);
        assert!(rows.windows(2).all(|w| w[0].index + 1 == w[1].index));
    }

    #[test]
    fn two_points() {
        let rows = run_sweep(&spec(SweepParameter::Energy, 1.5, 4.0, 2), None).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1].input.energy, 4.0);
    }

    #[test]
    fn pole_rows_are_flagged() {
        // ε = 2, g_t = 1: pole at u = 4
        let rows = run_sweep(&spec(SweepParameter::StepHeight, 3.5, 4.5, 3), None).unwrap();
        assert_eq!(rows[1].status, RecordStatus::Pole);
        assert_eq!(rows[1].regime, Regime::C);
    }

    #[test]
    fn invalid_specs() {
        assert!(spec(SweepParameter::Energy, 2.0, 1.5, 5).validate().is_err());
        assert!(spec(SweepParameter::Energy, 1.0, 3.0, 5).validate().is_err());
        assert!(spec(SweepParameter::Energy, 1.5, 3.0, 1).validate().is_err());
        assert!(spec(SweepParameter::VectorCoupling, 0.0, 1.2, 5).validate().is_err());
        assert!(spec(SweepParameter::StepHeight, 0.0, 1.0, 5).validate().is_err());
        let mut s = spec(SweepParameter::StepHeight, 1.0, 2.0, 5);
        s.g_t = 1.5;
        assert!(s.validate().is_err());
    }

    #[test]
    fn oracle_columns() {
        let s = SweepSpec { parameter: SweepParameter::Energy, start: 2.5, stop: 3.0, points: 2, energy: 0.0, step_height: 1.0, g_t: 1.0 };
        let rows = run_sweep(&s, Some(SweepOracle { width: 1e-3, config: IntegrationConfig::default() })).unwrap();
        for r in rows {
            let o = r.oracle.unwrap();
            assert!((o.r_numeric - r.reflection.unwrap()).abs() < 1e-3);
            assert!(o.converged);
        }
    }
}
