use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::lp;

use super::polytope::HPolytope;

/// A ball covering of a convex body built on a cubical grid.
#[derive(Clone, Debug)]
pub struct BodyCover {
    pub centers: Vec<Vector>,
    pub radius: f64,
    /// `M·r^d / Vol_d(K)`.
    pub ratio: f64,
}

/// Covers `K` by balls of radius `r` centred at the cells of a grid of pitch
/// `2r/√d` (each cell lies inside its ball) that meet `K`.
pub fn cover_body(k: &HPolytope, r: f64) -> Result<BodyCover> {
    let width = k.width()?;
    if r > width * (1.0 + 1e-12) {
        return Err(Error::Precondition(format!("radius {r} exceeds width {width}")));
    }
    let d = k.dim();
    let pitch = 2.0 * r / (d as f64).sqrt();
    let bbox = k.bounding_box();
    let counts: Vec<usize> =
        (0..d).map(|i| (((bbox.hi[i] - bbox.lo[i]) / pitch) * (1.0 - 1e-12)).ceil().max(1.0) as usize).collect();
    let rows: Vec<Vec<f64>> = k.halfspaces().iter().map(|h| h.normal.iter().copied().collect()).collect();
    let rhs: Vec<f64> = k.halfspaces().iter().map(|h| h.offset).collect();
    let mut centers = Vec::new();
    let total: usize = counts.iter().product();
    for flat in 0..total {
        let mut rem = flat;
        let mut center = Vector::zeros(d);
        for i in 0..d {
            let c = rem % counts[i];
            rem /= counts[i];
            center[i] = bbox.lo[i] + (c as f64 + 0.5) * pitch;
        }
        // Cell ∩ K ≠ ∅ iff the LP over K's constraints within the cell is feasible.
        let (margin, _) = lp::chebyshev_margin(&rows, &rhs, d, 1.0, Some((&center, 0.5 * pitch)));
        if margin >= -1e-9 {
            centers.push(center);
        }
    }
    let ratio = centers.len() as f64 * r.powi(d as i32) / k.volume();
    Ok(BodyCover { centers, radius: r, ratio })
}
