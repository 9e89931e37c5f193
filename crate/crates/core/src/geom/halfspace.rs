use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{vector, Vector};

/// `{x : normal·x ≤ offset}` with a unit normal.
#[derive(Clone, Debug, PartialEq)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: f64,
}

impl Halfspace {
    /// Normalizes `a·x ≤ b` to a unit normal.
    pub fn new(a: Vector, b: f64) -> Result<Halfspace> {
        let n = a.norm();
        if n <= 1e-14 {
            return Err(Error::Invalid("halfspace with zero normal".into()));
        }
        Ok(Halfspace { normal: a / n, offset: b / n })
    }

    pub fn from_row(row: &[f64]) -> Result<Halfspace> {
        let d = row.len().checked_sub(1).ok_or_else(|| Error::Invalid("empty halfspace row".into()))?;
        Halfspace::new(vector(&row[..d]), row[d])
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Signed slack `normal·x − offset` (≤ 0 inside).
    pub fn eval(&self, x: &Vector) -> f64 {
        self.normal.dot(x) - self.offset
    }

    pub fn flipped(&self) -> Halfspace {
        Halfspace { normal: -&self.normal, offset: -self.offset }
    }
}

/// Axis-aligned box `∏ [lo_i, hi_i]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl AxisBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<AxisBox> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), found: hi.len() });
        }
        if lo.iter().zip(&hi).any(|(a, b)| !(a <= b)) {
            return Err(Error::Invalid("box with lo > hi".into()));
        }
        Ok(AxisBox { lo, hi })
    }

    pub fn cube(dim: usize, lo: f64, hi: f64) -> AxisBox {
        AxisBox { lo: vec![lo; dim], hi: vec![hi; dim] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, x: &Vector) -> bool {
        (0..self.dim()).all(|i| x[i] >= self.lo[i] && x[i] <= self.hi[i])
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }

    pub fn center(&self) -> Vector {
        Vector::from_iterator(self.dim(), self.lo.iter().zip(&self.hi).map(|(a, b)| 0.5 * (a + b)))
    }

    pub fn diameter(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| (b - a) * (b - a)).sum::<f64>().sqrt()
    }

    pub fn halfspaces(&self) -> Vec<Halfspace> {
        let d = self.dim();
        let mut out = Vec::with_capacity(2 * d);
        for i in 0..d {
            let mut e = Vector::zeros(d);
            e[i] = 1.0;
            out.push(Halfspace { normal: e.clone(), offset: self.hi[i] });
            out.push(Halfspace { normal: -e, offset: -self.lo[i] });
        }
        out
    }

    pub fn corners(&self) -> Vec<Vector> {
        let d = self.dim();
        (0..1usize << d)
            .map(|mask| {
                Vector::from_iterator(d, (0..d).map(|i| if mask >> i & 1 == 1 { self.hi[i] } else { self.lo[i] }))
            })
            .collect()
    }

    /// Smallest box containing both.
    pub fn union_hull(&self, other: &AxisBox) -> AxisBox {
        AxisBox {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| a.min(*b)).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| a.max(*b)).collect(),
        }
    }

    pub fn of_points(points: &[Vector]) -> AxisBox {
        let d = points[0].len();
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for p in points {
            for i in 0..d {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        AxisBox { lo, hi }
    }

    pub fn expanded(&self, r: f64) -> AxisBox {
        AxisBox { lo: self.lo.iter().map(|a| a - r).collect(), hi: self.hi.iter().map(|b| b + r).collect() }
    }
}
