//! Configuration-driven experiment runner for `kinemalab`.
//!
//! Each experiment reads a strict JSON [`config::ExperimentConfig`],
//! dispatches to the core library, and produces a [`report::RunReport`] plus
//! a CSV table. Exit codes: 0 when every criterion passes, 1 when one fails,
//! 2 for configuration errors, 3 for runtime aborts.

pub mod config;
pub mod corpus;
pub mod experiments;
pub mod report;

use std::fmt;
use std::path::Path;
use std::time::Instant;

use config::ExperimentConfig;
use report::{Counters, RunReport};

#[derive(Debug)]
pub enum CliError {
    /// Malformed configuration or unreadable inputs.
    Config(String),
    /// Tolerance, general-position or resampling abort during a run.
    Runtime { message: String, resampled: usize },
    /// Output could not be written.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime { .. } | CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Runtime { message, .. } => write!(f, "runtime abort: {message}"),
            CliError::Io(m) => write!(f, "output error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<kinemalab_core::Error> for CliError {
    fn from(e: kinemalab_core::Error) -> CliError {
        use kinemalab_core::Error as E;
        match e {
            E::ResampleAbort { resampled, .. } => CliError::Runtime { message: e.to_string(), resampled },
            E::ToleranceAmbiguity(_) | E::GeneralPosition(_) | E::Degenerate { .. } | E::Uncertified(_) | E::Singular(_) => {
                CliError::Runtime { message: e.to_string(), resampled: 0 }
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}

/// Runs one experiment. Relative input paths resolve against `base`.
///
/// Runtime aborts still yield a report, with the error and counters filled
/// in, alongside the error itself.
pub fn run(config: &ExperimentConfig, base: &Path) -> Result<RunReport, (CliError, RunReport)> {
    let start = Instant::now();
    match experiments::dispatch(config, base) {
        Ok(o) => {
            let pass = o.criteria.iter().all(|c| c.pass);
            Ok(RunReport {
                experiment: config.experiment,
                config: config.clone(),
                config_hash: config.hash(),
                version: kinemalab_core::VERSION,
                threads: rayon::current_num_threads(),
                wall_clock_seconds: start.elapsed().as_secs_f64(),
                pass,
                criteria: o.criteria,
                metrics: o.metrics,
                counters: o.counters,
                error: None,
                table: o.table,
            })
        }
        Err(e) => {
            let counters = match &e {
                CliError::Runtime { resampled, .. } => Counters { resampled: *resampled, warnings: Vec::new() },
                _ => Counters::default(),
            };
            let report = RunReport::aborted(config, &e, counters, start.elapsed().as_secs_f64());
            Err((e, report))
        }
    }
}

/// Writes `report.json` and `<experiment>.csv` into `dir`.
pub fn write_outputs(report: &RunReport, dir: &Path) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    std::fs::write(dir.join("report.json"), report.to_json()).map_err(io)?;
    if !report.table.header.is_empty() {
        std::fs::write(dir.join(format!("{}.csv", report.experiment)), report.table.to_csv()?).map_err(io)?;
    }
    Ok(())
}
