use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{vector, Vector};

use super::{AffinePiece, PLConvex};

/// `f = g − h` with `g`, `h` max-affine.
#[derive(Clone, Debug)]
pub struct DCFunction {
    pub g: PLConvex,
    pub h: PLConvex,
}

/// `{"g": [[a_1..a_d, b], …], "h": [...]}`; an empty `h` means zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DcJson {
    pub g: Vec<Vec<f64>>,
    #[serde(default)]
    pub h: Vec<Vec<f64>>,
}

fn pieces(rows: &[Vec<f64>], dim: usize) -> Result<Vec<AffinePiece>> {
    rows.iter()
        .map(|r| {
            if r.len() != dim + 1 {
                return Err(Error::DimensionMismatch { expected: dim + 1, found: r.len() });
            }
            Ok(AffinePiece { a: vector(&r[..dim]), b: r[dim] })
        })
        .collect()
}

impl DCFunction {
    pub fn new(g: PLConvex, h: PLConvex) -> Result<DCFunction> {
        if g.dim() != h.dim() {
            return Err(Error::DimensionMismatch { expected: g.dim(), found: h.dim() });
        }
        Ok(DCFunction { g, h })
    }

    pub fn convex(g: PLConvex) -> DCFunction {
        let d = g.dim();
        DCFunction { g, h: PLConvex::zero(d) }
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn eval(&self, x: &Vector) -> f64 {
        self.g.eval(x) - self.h.eval(x)
    }

    pub fn from_json(j: &DcJson) -> Result<DCFunction> {
        let dim = j.g.first().map(|r| r.len()).ok_or(Error::Invalid("g needs at least one piece".into()))? - 1;
        let g = PLConvex::new(dim, pieces(&j.g, dim)?)?;
        let h = if j.h.is_empty() { PLConvex::zero(dim) } else { PLConvex::new(dim, pieces(&j.h, dim)?)? };
        DCFunction::new(g, h)
    }

    pub fn to_json(&self) -> DcJson {
        let rows = |p: &PLConvex| p.pieces().iter().map(|q| q.a.iter().copied().chain([q.b]).collect()).collect();
        DcJson { g: rows(&self.g), h: if self.h.is_zero() { Vec::new() } else { rows(&self.h) } }
    }

    pub fn parse(text: &str) -> Result<DCFunction> {
        DCFunction::from_json(&serde_json::from_str(text)?)
    }
}
