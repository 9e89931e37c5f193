use serde::{Deserialize, Serialize};

use crate::error::Result;

/// `(Φ_0, …, Φ_d)` with per-entry standard errors (zero when exact).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureProfile {
    pub values: Vec<f64>,
    pub stderr: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct Row {
    k: usize,
    value: f64,
    stderr: f64,
}

impl CurvatureProfile {
    pub fn exact(values: Vec<f64>) -> CurvatureProfile {
        let n = values.len();
        CurvatureProfile { values, stderr: vec![0.0; n] }
    }

    pub fn dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for (k, (value, stderr)) in self.values.iter().zip(&self.stderr).enumerate() {
            w.serialize(Row { k, value: *value, stderr: *stderr })?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv is utf-8"))
    }

    pub fn from_csv(text: &str) -> Result<CurvatureProfile> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let mut rows: Vec<Row> = r.deserialize().collect::<std::result::Result<_, _>>()?;
        rows.sort_by_key(|row| row.k);
        Ok(CurvatureProfile {
            values: rows.iter().map(|r| r.value).collect(),
            stderr: rows.iter().map(|r| r.stderr).collect(),
        })
    }
}
