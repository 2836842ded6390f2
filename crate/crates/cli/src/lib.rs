//! Command implementations behind the `vouch` binary: scenario runs, sweep
//! grids, the protocol demo, and identity recovery.

pub mod config;
pub mod demo;
pub mod output;
pub mod recover;

use std::io::Write;
use std::path::Path;

use thiserror::Error;
use vouch_core::engine::run_scenario;
use vouch_core::sweep::{run_sweep, summarize, RunRecord};

use config::CliOverrides;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad configuration or malformed input: exit code 1.
    #[error("{0}")]
    Config(String),
    /// Failure while executing or persisting: exit code 2.
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

/// Executes one scenario; writes `results.csv`, the resolved-config echo,
/// and `trajectories.csv` when sampling is enabled.
pub fn cmd_run(
    config_path: Option<&Path>,
    out_dir: &Path,
    overrides: CliOverrides,
) -> Result<(), CliError> {
    let resolved = config::load(config_path, overrides).map_err(|e| CliError::Config(e.to_string()))?;
    let scenario = resolved.scenario;
    let result = run_scenario(&scenario).map_err(runtime)?;
    let record = RunRecord {
        model: scenario.mobility.model,
        hop_limit: scenario.hop_limit,
        malicious_ratio: scenario.malicious_ratio,
        repetition: 0,
        seed: scenario.seed,
        result,
    };
    output::write_file(out_dir, "results.csv", &output::raw_csv(std::slice::from_ref(&record)))
        .map_err(runtime)?;
    output::write_file(out_dir, "resolved.conf", &resolved.echo()).map_err(runtime)?;
    if scenario.trajectory_interval > 0.0 {
        output::write_file(
            out_dir,
            "trajectories.csv",
            &output::trajectory_csv(&record.result.trajectories),
        )
        .map_err(runtime)?;
    }
    Ok(())
}

/// Executes the sweep grid; writes `raw.csv`, `summary.csv` (when there are
/// enough repetitions for confidence intervals) and the resolved-config echo.
pub fn cmd_sweep(
    config_path: Option<&Path>,
    out_dir: &Path,
    parallelism: usize,
    overrides: CliOverrides,
) -> Result<(), CliError> {
    let resolved = config::load(config_path, overrides).map_err(|e| CliError::Config(e.to_string()))?;
    let spec = resolved.sweep_spec();
    spec.validate().map_err(|e| CliError::Config(e.to_string()))?;
    let records = run_sweep(&spec, parallelism).map_err(runtime)?;
    output::write_file(out_dir, "raw.csv", &output::raw_csv(&records)).map_err(runtime)?;
    if spec.repetitions >= 2 {
        let cells = summarize(&records).map_err(runtime)?;
        output::write_file(out_dir, "summary.csv", &output::summary_csv(&cells))
            .map_err(runtime)?;
    }
    output::write_file(out_dir, "resolved.conf", &resolved.echo()).map_err(runtime)?;
    Ok(())
}

/// Prints the scripted protocol walkthrough.
pub fn cmd_demo(seed: u64, out: &mut impl Write) -> Result<(), CliError> {
    demo::run_demo(seed, out).map_err(|e| CliError::Runtime(e.0))
}

/// Prints the recovered id behind a vote identifier, or "not found".
pub fn cmd_recover(
    upsilon: &str,
    report_hash: &str,
    k_is: &str,
    ids: &str,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let line = recover::recover(upsilon, report_hash, k_is, ids)
        .map_err(|e| CliError::Config(e.to_string()))?;
    writeln!(out, "{line}").map_err(runtime)
}
