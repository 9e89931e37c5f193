//! Run reports and CSV tables.

use serde::Serialize;

use crate::config::{Experiment, ExperimentConfig};
use crate::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub tolerance: f64,
}

impl Criterion {
    /// Passes iff `value ≤ tolerance` (NaN fails).
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Criterion {
        Criterion { name: name.into(), pass: value <= tolerance, value, tolerance }
    }

    /// Passes iff `value ≥ tolerance`.
    pub fn at_least(name: impl Into<String>, value: f64, tolerance: f64) -> Criterion {
        Criterion { name: name.into(), pass: value >= tolerance, value, tolerance }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Counters {
    pub resampled: usize,
    pub warnings: Vec<String>,
}

/// Header and string rows of the experiment's CSV output.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Table {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

/// Shortest round-trip decimal form, so CSV output is byte-stable.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub experiment: Experiment,
    pub config: ExperimentConfig,
    pub config_hash: String,
    pub version: &'static str,
    pub threads: usize,
    pub wall_clock_seconds: f64,
    pub pass: bool,
    pub criteria: Vec<Criterion>,
    pub metrics: serde_json::Value,
    pub counters: Counters,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub table: Table,
}

impl RunReport {
    pub fn aborted(config: &ExperimentConfig, error: &CliError, counters: Counters, seconds: f64) -> RunReport {
        RunReport {
            experiment: config.experiment,
            config: config.clone(),
            config_hash: config.hash(),
            version: kinemalab_core::VERSION,
            threads: rayon::current_num_threads(),
            wall_clock_seconds: seconds,
            pass: false,
            criteria: Vec::new(),
            metrics: serde_json::Value::Null,
            counters,
            error: Some(error.to_string()),
            table: Table::default(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// One line per criterion, for the terminal.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.criteria {
            s.push_str(&format!("{}  {}: {:.6e} (tolerance {:.3e})\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.value, c.tolerance));
        }
        if let Some(e) = &self.error {
            s.push_str(&format!("ABORT  {e}\n"));
        }
        s.push_str(&format!("{} {} in {:.2} s, config {}\n", self.experiment, if self.pass { "passed" } else { "failed" }, self.wall_clock_seconds, &self.config_hash[..12]));
        s
    }
}
