//! Command-line front end. Exit codes: 0 success, 2 input validation,
//! 3 analytic singularity or boundary, 4 oracle failure.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{KgError, Result};
use crate::input::{CouplingMix, ScatteringInput};
use crate::oracle::{convergence_study, IntegrationConfig, ERROR_FLOOR, FINAL_TOLERANCE};
use crate::output::{col, plain, Cell, Column, Format, Table};
use crate::profile::{linspace, stationary_profile};
use crate::regime::{antiparticle_effective_step, classify};
use crate::scattering::coefficients;
use crate::sweep::{run_sweep, OutputRecord, SweepOracle, SweepParameter, SweepSpec};
use crate::units::{Dimension, UnitSystem, ELECTRON_MASS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "kgstep", version, about = "Klein-Gordon scattering off a mixed vector/scalar potential step")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub format: OutputFormat,

    /// Display units. Inputs are always natural units (mc², ħ/(mc)).
    #[arg(long, value_enum, default_value_t = UnitChoice::Natural, global = true)]
    pub unit_system: UnitChoice,

    /// Rest mass in kg used by `--unit-system si`.
    #[arg(long, default_value_t = ELECTRON_MASS, global = true)]
    pub mass: f64,

    /// Write to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnitChoice {
    Natural,
    Si,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParamChoice {
    #[value(name = "energy")]
    Energy,
    #[value(name = "step_height", alias = "step-height", alias = "v0")]
    StepHeight,
    #[value(name = "g_t", alias = "gt", alias = "g-t")]
    GT,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    /// Incident energy ε = E/(mc²), must exceed 1.
    #[arg(long, allow_negative_numbers = true)]
    pub energy: f64,
    /// Step height u = V₀/(mc²).
    #[arg(long, allow_negative_numbers = true)]
    pub v0: f64,
    /// Vector share g_t of the coupling; g_s = 1 − g_t.
    #[arg(long, allow_negative_numbers = true)]
    pub gt: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regime and thresholds for one input.
    Classify(PointArgs),
    /// Amplitude ratios, R, T and group velocities for one input.
    Scatter(PointArgs),
    /// One row per grid point of a single swept parameter.
    Sweep {
        #[arg(long, value_enum)]
        param: ParamChoice,
        #[arg(long, allow_negative_numbers = true)]
        start: f64,
        #[arg(long, allow_negative_numbers = true)]
        stop: f64,
        #[arg(long)]
        points: usize,
        #[arg(long, allow_negative_numbers = true)]
        energy: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        v0: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        gt: Option<f64>,
        /// Also run the logistic-step oracle at this width for every row.
        #[arg(long)]
        oracle_width: Option<f64>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Density, current and |φ|² on a grid of positions.
    Profile {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, allow_negative_numbers = true)]
        xmin: f64,
        #[arg(long, allow_negative_numbers = true)]
        xmax: f64,
        #[arg(long)]
        samples: usize,
    },
    /// Classification over a sweep of the incident energy.
    Threshold {
        #[arg(long, allow_negative_numbers = true)]
        v0: f64,
        #[arg(long, allow_negative_numbers = true)]
        gt: f64,
        #[arg(long, allow_negative_numbers = true)]
        start: f64,
        #[arg(long, allow_negative_numbers = true)]
        stop: f64,
        #[arg(long)]
        points: usize,
    },
    /// Logistic-step oracle against the closed form over decreasing widths.
    OracleCompare {
        #[command(flatten)]
        point: PointArgs,
        /// Comma-separated, strictly decreasing widths.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        widths: Vec<f64>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Half-width L of the integration domain.
    #[arg(long)]
    pub domain_half_width: Option<f64>,
    /// Number of RK4 steps across [−L, L].
    #[arg(long)]
    pub steps: Option<usize>,
}

impl OracleArgs {
    fn config(&self) -> IntegrationConfig {
        IntegrationConfig { domain_half_width: self.domain_half_width, step_count: self.steps }
    }
}

/// Result of running a subcommand: a table to print and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub table: Table,
    pub exit_code: i32,
    pub diagnostic: Option<String>,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Outcome { table, exit_code: EXIT_OK, diagnostic: None }
    }
}

fn point_input(p: &PointArgs) -> Result<ScatteringInput> {
    positive_step(p.v0)?;
    ScatteringInput::new(p.energy, p.v0, CouplingMix::vector_fraction(p.gt)?)
}

fn positive_step(u: f64) -> Result<()> {
    if u > 0.0 {
        Ok(())
    } else {
        Err(KgError::invalid(format!("step height must be positive, got {u}")))
    }
}

const INPUT_COLUMNS: [Column; 4] = [
    col("energy", Dimension::Energy),
    col("v0", Dimension::Energy),
    plain("gt"),
    plain("gs"),
];

fn input_cells(input: &ScatteringInput) -> Vec<Cell> {
    vec![
        Cell::Num(input.energy),
        Cell::Num(input.step_height),
        Cell::Num(input.mix.g_t),
        Cell::Num(input.mix.g_s),
    ]
}

fn classify_table() -> Table {
    let mut columns = INPUT_COLUMNS.to_vec();
    columns.extend([
        plain("regime"),
        plain("boundary_detail"),
        col("v_c", Dimension::Energy),
        col("v_m", Dimension::Energy),
        col("antiparticle_step", Dimension::Energy),
    ]);
    Table::new(columns)
}

fn classify_row(input: &ScatteringInput) -> Vec<Cell> {
    let report = classify(input);
    let mut row = input_cells(input);
    row.extend([
        Cell::text(report.regime.as_str()),
        report.boundary_detail.map_or(Cell::Null, |d| Cell::text(d.as_str())),
        report.v_c.into(),
        report.v_m.into(),
        Cell::Num(antiparticle_effective_step(input)),
    ]);
    row
}

fn error_table(err: &KgError, input: Option<&ScatteringInput>) -> Table {
    let status = match err {
        KgError::Boundary(_) => "boundary",
        KgError::Pole { .. } => "pole",
        KgError::Domain(_) => "domain",
        KgError::Divergence { .. } | KgError::Decomposition { .. } => "oracle_failure",
        KgError::InvalidInput(_) => "invalid_input",
    };
    let mut columns = vec![plain("status"), plain("error")];
    let mut row = vec![Cell::text(status), Cell::text(err.to_string())];
    if let Some(input) = input {
        columns.extend(INPUT_COLUMNS);
        row.extend(input_cells(input));
    }
    let mut t = Table::new(columns);
    t.push(row);
    t
}

fn failure(err: KgError, input: Option<&ScatteringInput>) -> Outcome {
    Outcome {
        table: error_table(&err, input),
        exit_code: err.exit_code(),
        diagnostic: Some(err.to_string()),
    }
}

fn validation(err: KgError) -> Outcome {
    Outcome { table: Table::new(vec![]), exit_code: EXIT_INVALID, diagnostic: Some(err.to_string()) }
}

fn cmd_classify(p: &PointArgs) -> Outcome {
    match point_input(p) {
        Ok(input) => {
            let mut t = classify_table();
            t.push(classify_row(&input));
            Outcome::ok(t)
        }
        Err(e) => validation(e),
    }
}

fn cmd_scatter(p: &PointArgs) -> Outcome {
    let input = match point_input(p) {
        Ok(i) => i,
        Err(e) => return validation(e),
    };
    let sol = match coefficients(&input) {
        Ok(s) => s,
        Err(e) => return failure(e, Some(&input)),
    };
    let report = classify(&input);
    let mut columns = INPUT_COLUMNS.to_vec();
    columns.extend([
        plain("regime"),
        col("k", Dimension::InverseLength),
        col("kappa_sq", Dimension::InverseLengthSquared),
        plain("kappa_kind"),
        col("kappa", Dimension::InverseLength),
        plain("ratio_reflect_re"),
        plain("ratio_reflect_im"),
        plain("ratio_transmit_particle_re"),
        plain("ratio_transmit_particle_im"),
        plain("ratio_transmit_anti_re"),
        plain("ratio_transmit_anti_im"),
        plain("R"),
        plain("T"),
        col("v_g_left", Dimension::Velocity),
        col("v_g_right", Dimension::Velocity),
        col("v_c", Dimension::Energy),
        col("v_m", Dimension::Energy),
    ]);
    let mut t = Table::new(columns);
    let mut row = input_cells(&input);
    row.extend([
        Cell::text(sol.regime.as_str()),
        Cell::Num(sol.waves.k),
        Cell::Num(sol.waves.kappa_sq),
        Cell::text(sol.waves.kappa.kind()),
        Cell::Num(sol.waves.kappa.magnitude()),
        Cell::Num(sol.ratio_reflect.re),
        Cell::Num(sol.ratio_reflect.im),
        Cell::Num(sol.ratio_transmit_particle.re),
        Cell::Num(sol.ratio_transmit_particle.im),
        Cell::Num(sol.ratio_transmit_anti.re),
        Cell::Num(sol.ratio_transmit_anti.im),
        Cell::Num(sol.reflection),
        Cell::Num(sol.transmission),
        Cell::Num(sol.v_g_left),
        Cell::Num(sol.v_g_right),
        report.v_c.into(),
        report.v_m.into(),
    ]);
    t.push(row);
    Outcome::ok(t)
}

fn sweep_table(records: &[OutputRecord], with_oracle: bool) -> Table {
    let mut columns = vec![plain("index")];
    columns.extend(INPUT_COLUMNS);
    columns.extend([
        plain("regime"),
        plain("boundary_detail"),
        plain("status"),
        plain("R"),
        plain("T"),
        col("v_c", Dimension::Energy),
        col("v_m", Dimension::Energy),
        col("delta_x", Dimension::Length),
    ]);
    if with_oracle {
        columns.extend([
            col("oracle_width", Dimension::Length),
            plain("R_numeric"),
            plain("current_drift"),
            plain("oracle_converged"),
        ]);
    }
    let mut t = Table::new(columns);
    for r in records {
        let mut row = vec![Cell::Int(r.index as i64)];
        row.extend(input_cells(&r.input));
        row.extend([
            Cell::text(r.regime.as_str()),
            r.boundary_detail.map_or(Cell::Null, |d| Cell::text(d.as_str())),
            Cell::text(r.status.as_str()),
            Cell::opt(r.reflection),
            Cell::opt(r.transmission),
            r.v_c.into(),
            r.v_m.into(),
            Cell::opt(r.delta_x),
        ]);
        if with_oracle {
            match r.oracle {
                Some(o) => row.extend([
                    Cell::Num(o.width),
                    Cell::Num(o.r_numeric),
                    Cell::Num(o.current_drift),
                    Cell::Bool(o.converged),
                ]),
                None => row.extend([Cell::Null, Cell::Null, Cell::Null, Cell::Null]),
            }
        }
        t.push(row);
    }
    t
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    param: ParamChoice,
    start: f64,
    stop: f64,
    points: usize,
    energy: Option<f64>,
    v0: Option<f64>,
    gt: Option<f64>,
    oracle_width: Option<f64>,
    oracle: &OracleArgs,
) -> Outcome {
    let parameter = match param {
        ParamChoice::Energy => SweepParameter::Energy,
        ParamChoice::StepHeight => SweepParameter::StepHeight,
        ParamChoice::GT => SweepParameter::VectorCoupling,
    };
    let missing = |name: &str| validation(KgError::invalid(format!("--{name} is required for this sweep")));
    let energy = match (parameter, energy) {
        (SweepParameter::Energy, _) => start,
        (_, Some(e)) => e,
        (_, None) => return missing("energy"),
    };
    let step_height = match (parameter, v0) {
        (SweepParameter::StepHeight, _) => start,
        (_, Some(u)) => u,
        (_, None) => return missing("v0"),
    };
    let g_t = match (parameter, gt) {
        (SweepParameter::VectorCoupling, _) => start,
        (_, Some(g)) => g,
        (_, None) => return missing("gt"),
    };
    let spec = SweepSpec { parameter, start, stop, points, energy, step_height, g_t };
    if let Err(e) = spec.validate() {
        return validation(e);
    }
    let oracle = match oracle_width {
        Some(w) if !(w.is_finite() && w > 0.0) => {
            return validation(KgError::invalid(format!("oracle width must be positive, got {w}")))
        }
        Some(width) => Some(SweepOracle { width, config: oracle.config() }),
        None => None,
    };
    match run_sweep(&spec, oracle) {
        Ok(records) => Outcome::ok(sweep_table(&records, oracle.is_some())),
        Err(e) => failure(e, None),
    }
}

fn cmd_profile(p: &PointArgs, xmin: f64, xmax: f64, samples: usize) -> Outcome {
    // A zero step is accepted here: the plane-wave profile is a useful reference.
    let input = match CouplingMix::vector_fraction(p.gt)
        .and_then(|mix| ScatteringInput::new(p.energy, p.v0, mix))
    {
        Ok(i) => i,
        Err(e) => return validation(e),
    };
    if !(xmin.is_finite() && xmax.is_finite() && xmin < 0.0 && 0.0 < xmax) {
        return validation(KgError::invalid(format!(
            "profile grid must span both sides of the step (xmin < 0 < xmax), got {xmin} .. {xmax}"
        )));
    }
    if samples < 2 {
        return validation(KgError::invalid("profile needs at least 2 samples"));
    }
    let profile = match stationary_profile(&input, &linspace(xmin, xmax, samples)) {
        Ok(p) => p,
        Err(e) => return failure(e, Some(&input)),
    };
    let mut t = Table::new(vec![
        col("x", Dimension::Length),
        plain("rho"),
        plain("J"),
        plain("mod_phi_sq"),
    ]);
    for i in 0..profile.xs.len() {
        t.push(vec![
            Cell::Num(profile.xs[i]),
            Cell::Num(profile.rho[i]),
            Cell::Num(profile.current[i]),
            Cell::Num(profile.mod_phi_sq[i]),
        ]);
    }
    Outcome::ok(t)
}

fn cmd_threshold(v0: f64, gt: f64, start: f64, stop: f64, points: usize) -> Outcome {
    let spec = SweepSpec {
        parameter: SweepParameter::Energy,
        start,
        stop,
        points,
        energy: start,
        step_height: v0,
        g_t: gt,
    };
    if let Err(e) = spec.validate() {
        return validation(e);
    }
    let mut t = classify_table();
    for e in spec.values() {
        match spec.input_at(e) {
            Ok(input) => t.push(classify_row(&input)),
            Err(err) => return validation(err),
        }
    }
    Outcome::ok(t)
}

fn cmd_oracle_compare(p: &PointArgs, widths: &[f64], oracle: &OracleArgs) -> Outcome {
    let input = match point_input(p) {
        Ok(i) => i,
        Err(e) => return validation(e),
    };
    let table = match convergence_study(input.energy, input.step_height, input.mix, widths, &oracle.config()) {
        Ok(t) => t,
        Err(e @ KgError::InvalidInput(_)) => return validation(e),
        Err(e) => return failure(e, Some(&input)),
    };
    let mut t = Table::new(vec![
        col("w", Dimension::Length),
        plain("R_numeric"),
        plain("R_closed"),
        plain("abs_error"),
        plain("current_drift"),
        plain("converged"),
        plain("status"),
    ]);
    let n = table.rows.len();
    let tail_start = n.saturating_sub(3);
    for (i, row) in table.rows.iter().enumerate() {
        let regressed = i > tail_start
            && row.abs_error > table.rows[i - 1].abs_error.max(ERROR_FLOOR);
        let missed = i + 1 == n && row.abs_error > FINAL_TOLERANCE;
        let status = if !row.converged || regressed || missed { "non_converged" } else { "ok" };
        t.push(vec![
            Cell::Num(row.width),
            Cell::Num(row.r_numeric),
            Cell::Num(row.r_closed),
            Cell::Num(row.abs_error),
            Cell::Num(row.current_drift),
            Cell::Bool(row.converged),
            Cell::text(status),
        ]);
    }
    Outcome::ok(t)
}

impl Cli {
    pub fn run(&self) -> Outcome {
        match &self.command {
            Command::Classify(p) => cmd_classify(p),
            Command::Scatter(p) => cmd_scatter(p),
            Command::Sweep { param, start, stop, points, energy, v0, gt, oracle_width, oracle } => {
                cmd_sweep(*param, *start, *stop, *points, *energy, *v0, *gt, *oracle_width, oracle)
            }
            Command::Profile { point, xmin, xmax, samples } => cmd_profile(point, *xmin, *xmax, *samples),
            Command::Threshold { v0, gt, start, stop, points } => {
                cmd_threshold(*v0, *gt, *start, *stop, *points)
            }
            Command::OracleCompare { point, widths, oracle } => cmd_oracle_compare(point, widths, oracle),
        }
    }

    pub fn units(&self) -> Result<UnitSystem> {
        match self.unit_system {
            UnitChoice::Natural => Ok(UnitSystem::NATURAL),
            UnitChoice::Si => UnitSystem::si(self.mass),
        }
    }

    pub fn output_format(&self) -> Format {
        match self.format {
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
        }
    }
}

/// Parses `args`, runs the command and writes its output. Returns the process
/// exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let units = match cli.units() {
        Ok(u) => u,
        Err(e) => {
            eprintln!("kgstep: {e}");
            return EXIT_INVALID;
        }
    };
    let outcome = cli.run();
    if let Some(msg) = &outcome.diagnostic {
        eprintln!("kgstep: {msg}");
    }
    if outcome.table.columns.is_empty() {
        return outcome.exit_code;
    }
    let written = match &cli.out {
        Some(path) => File::create(path)
            .and_then(|f| outcome.table.write(io::BufWriter::new(f), cli.output_format(), &units)),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            outcome
                .table
                .write(&mut lock, cli.output_format(), &units)
                .and_then(|_| lock.flush())
        }
    };
    match written {
        Ok(()) => outcome.exit_code,
        Err(e) => {
            eprintln!("kgstep: failed to write output: {e}");
            EXIT_INVALID
        }
    }
}
