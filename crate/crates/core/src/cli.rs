//! Command implementations behind the binary. Each command computes its
//! full result before writing the output file.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::analysis::{sweep_1d, transfer_efficiency, SweepParam, SweepResult};
use crate::config::{ConfigFile, RunConfig};
use crate::error::{Error, Result};
use crate::integrator::integrate;
use crate::oracles::OracleSuite;
use crate::output::{pulses_csv, sweep_csv, trajectory_csv, write_file};
use crate::params::{ModelKind, REGIME_RATIO};
use crate::state::ModeState;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

/// Reads the config file (or `{}` when absent) and applies command-line
/// overrides before validation.
pub fn load_config(
    path: Option<&Path>,
    model: Option<ModelKind>,
    dissipative: bool,
    out: Option<PathBuf>,
) -> Result<RunConfig> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)?,
        None => "{}".to_string(),
    };
    let mut file = ConfigFile::parse(&text)?;
    if model.is_some() {
        file.model = model;
    }
    if dissipative {
        file.dissipative = Some(true);
    }
    let mut cfg = file.into_run_config()?;
    cfg.output_path = out;
    Ok(cfg)
}

fn output_path(cfg: &RunConfig, default: &str) -> PathBuf {
    cfg.output_path
        .clone()
        .unwrap_or_else(|| PathBuf::from(default))
}

fn warn_regime(cfg: &RunConfig) {
    if cfg.params.regime_warning() {
        eprintln!(
            "warning: delta = {} is below {REGIME_RATIO} x g_fiber = {}; the fiber mode is not far detuned",
            cfg.params.delta,
            REGIME_RATIO * cfg.params.g_fiber
        );
    }
}

pub fn run_simulate(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<f64> {
    warn_regime(cfg);
    let state0 = ModeState::seed(cfg.kind.model());
    let traj = integrate(cfg.kind, &cfg.params, &state0, &cfg.integrator)?;
    let eta = transfer_efficiency(&traj)?;
    write_file(&output_path(cfg, "trajectory.csv"), &trajectory_csv(&traj))?;
    writeln!(stdout, "eta = {eta:.12e}")?;
    Ok(eta)
}

pub fn run_sweep(
    cfg: &RunConfig,
    param: SweepParam,
    lo: f64,
    hi: f64,
    steps: usize,
    stdout: &mut dyn Write,
) -> Result<SweepResult> {
    warn_regime(cfg);
    let result = sweep_1d(param, lo, hi, steps, &cfg.params, cfg.kind, &cfg.integrator)?;
    write_file(&output_path(cfg, "sweep.csv"), &sweep_csv(&result))?;
    writeln!(
        stdout,
        "best {} = {}, eta = {:.12e}",
        param,
        result.best_value(),
        result.best_eta()
    )?;
    Ok(result)
}

pub fn run_pulses(cfg: &RunConfig) -> Result<()> {
    write_file(
        &output_path(cfg, "pulses.csv"),
        &pulses_csv(&cfg.params, &cfg.integrator),
    )
}

/// Runs the oracle suite and prints one line per check. True iff all pass.
pub fn run_validate(suite: &OracleSuite, stdout: &mut dyn Write) -> Result<bool> {
    let outcomes = suite.run();
    for o in &outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        writeln!(stdout, "{tag} {:<28} {}", o.name, o.detail)?;
    }
    Ok(outcomes.iter().all(|o| o.passed))
}

/// Convenience for binaries: report an error on stderr and map it to an
/// exit code.
pub fn report(err: &Error) -> i32 {
    eprintln!("error: {err}");
    err.exit_code()
}
