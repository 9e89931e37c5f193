use rand::Rng as _;
use rayon::prelude::*;

use crate::error::Result;
use crate::geom::HPolytope;
use crate::linalg::{unit_ball_volume, Vector};
use crate::qp::distance_to_hull;
use crate::rng::{self, Moments, CHUNK};

use super::{intrinsic_volumes, CurvatureProfile};

/// Closed-form parallel-body volume against a Monte-Carlo estimate.
#[derive(Clone, Copy, Debug)]
pub struct SteinerCheck {
    pub formula: f64,
    pub mc: f64,
    pub stderr: f64,
}

impl SteinerCheck {
    pub fn z(&self) -> f64 {
        (self.formula - self.mc) / self.stderr.max(1e-300)
    }
}

/// `Vol(P_ε) = Σ_k ω_{d−k} ε^{d−k} V_k(P)`.
pub fn steiner_formula(profile: &CurvatureProfile, eps: f64) -> f64 {
    let d = profile.dim();
    (0..=d).map(|k| unit_ball_volume(d - k) * eps.powi((d - k) as i32) * profile.values[k]).sum()
}

/// Steiner formula value and a uniform-sampling estimate of `Vol(P_ε)` from
/// the bounding box of `P` inflated by `ε`.
pub fn steiner_volume(p: &HPolytope, eps: f64, samples: usize, seed: u64) -> Result<SteinerCheck> {
    let formula = steiner_formula(&intrinsic_volumes(p)?, eps);
    let bbox = p.bounding_box().expanded(eps);
    let vol = bbox.volume();
    let d = p.dim();
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut r = rng::stream(seed, c as u64);
            let n = CHUNK.min(samples - c * CHUNK);
            let mut m = Moments::default();
            for _ in 0..n {
                let x = Vector::from_iterator(d, (0..d).map(|i| r.random_range(bbox.lo[i]..bbox.hi[i])));
                let hit = p.contains(&x) || distance_to_hull(&x, p.vertices()) <= eps;
                m.push(if hit { vol } else { 0.0 });
            }
            m
        })
        .collect();
    let m = parts.into_iter().fold(Moments::default(), Moments::merge);
    Ok(SteinerCheck { formula, mc: m.mean(), stderr: m.stderr() })
}
