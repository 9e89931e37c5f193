use crate::error::{Error, Result};
use crate::geom::RigidMotion;
use crate::linalg::Vector;
use crate::lp;

use super::ClarkeHull;

/// `x ↦ a·x + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffinePiece {
    pub a: Vector,
    pub b: f64,
}

impl AffinePiece {
    pub fn eval(&self, x: &Vector) -> f64 {
        self.a.dot(x) + self.b
    }
}

/// A max of affine functions; every stored piece is strictly maximal on some
/// open set.
#[derive(Clone, Debug)]
pub struct PLConvex {
    dim: usize,
    pieces: Vec<AffinePiece>,
}

impl PLConvex {
    pub fn new(dim: usize, pieces: Vec<AffinePiece>) -> Result<PLConvex> {
        if pieces.is_empty() {
            return Err(Error::Invalid("max-affine function needs at least one piece".into()));
        }
        if let Some(p) = pieces.iter().find(|p| p.a.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.a.len() });
        }
        Ok(PLConvex { dim, pieces: prune(pieces) })
    }

    pub fn zero(dim: usize) -> PLConvex {
        PLConvex { dim, pieces: vec![AffinePiece { a: Vector::zeros(dim), b: 0.0 }] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0].a.amax() == 0.0 && self.pieces[0].b == 0.0
    }

    pub fn eval(&self, x: &Vector) -> f64 {
        self.pieces.iter().map(|p| p.eval(x)).fold(f64::NEG_INFINITY, f64::max)
    }

    fn scale_at(&self, x: &Vector) -> f64 {
        let amax = self.pieces.iter().map(|p| p.a.amax()).fold(0.0, f64::max);
        1.0 + amax * x.amax() + self.pieces.iter().map(|p| p.b.abs()).fold(0.0, f64::max)
    }

    /// Indices of pieces attaining the max at `x` (within tolerance).
    pub fn active(&self, x: &Vector) -> Vec<usize> {
        let vals: Vec<f64> = self.pieces.iter().map(|p| p.eval(x)).collect();
        let top = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let tol = crate::geom::TAU * self.scale_at(x);
        (0..vals.len()).filter(|&i| top - vals[i] <= tol).collect()
    }

    /// Convex subdifferential: hull of the active gradients.
    pub fn subdiff(&self, x: &Vector) -> ClarkeHull {
        ClarkeHull::new(self.active(x).into_iter().map(|i| self.pieces[i].a.clone()).collect())
    }

    pub fn add(&self, other: &PLConvex) -> PLConvex {
        let mut out = Vec::with_capacity(self.pieces.len() * other.pieces.len());
        for p in &self.pieces {
            for q in &other.pieces {
                out.push(AffinePiece { a: &p.a + &q.a, b: p.b + q.b });
            }
        }
        PLConvex { dim: self.dim, pieces: prune(out) }
    }

    pub fn max(&self, other: &PLConvex) -> PLConvex {
        PLConvex { dim: self.dim, pieces: prune(self.pieces.iter().chain(&other.pieces).cloned().collect()) }
    }

    /// `x ↦ self(γ⁻¹ x)`.
    pub fn compose_inverse(&self, g: &RigidMotion) -> PLConvex {
        PLConvex {
            dim: self.dim,
            pieces: self
                .pieces
                .iter()
                .map(|p| {
                    let ra = g.apply_direction(&p.a);
                    AffinePiece { b: p.b - ra.dot(&g.translation), a: ra }
                })
                .collect(),
        }
    }
}

/// Drops duplicate pieces and pieces that are nowhere strictly maximal.
fn prune(pieces: Vec<AffinePiece>) -> Vec<AffinePiece> {
    let mut uniq: Vec<AffinePiece> = Vec::with_capacity(pieces.len());
    for p in pieces {
        if let Some(q) = uniq.iter_mut().find(|q| (&q.a - &p.a).amax() <= 1e-12) {
            q.b = q.b.max(p.b);
        } else {
            uniq.push(p);
        }
    }
    if uniq.len() <= 1 {
        return uniq;
    }
    let dim = uniq[0].a.len();
    let keep: Vec<bool> = (0..uniq.len())
        .map(|i| {
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for (k, q) in uniq.iter().enumerate() {
                if k != i {
                    rows.push((&q.a - &uniq[i].a).iter().copied().collect::<Vec<f64>>());
                    rhs.push(uniq[i].b - q.b);
                }
            }
            lp::chebyshev_margin(&rows, &rhs, dim, 1.0, None).0 > crate::geom::TAU
        })
        .collect();
    uniq.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect()
}
