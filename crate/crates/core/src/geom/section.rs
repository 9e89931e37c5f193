//! Volumes of convex cells cut by extra halfspaces, computed in the cell's
//! own affine frame.

use crate::error::Result;
use crate::linalg::{Frame, Vector};

use super::hull::{self, coordinate_scale, LocalHull};
use super::polytope::enumerate_vertices;
use super::{Halfspace, TAU};

/// Constraints `a·y ≤ b` in frame coordinates.
pub type LocalRows = Vec<(Vector, f64)>;

/// Expresses global halfspaces in frame coordinates. Constraints that are
/// constant on the frame are dropped when satisfied; `None` when one of them
/// is violated (the frame misses the region entirely).
pub fn restrict(frame: &Frame, hs: &[Halfspace]) -> Option<LocalRows> {
    let scale = coordinate_scale(std::slice::from_ref(&frame.origin));
    let mut out = Vec::with_capacity(hs.len());
    for h in hs {
        let a = frame.direction_to_local(&h.normal);
        let b = h.offset - h.normal.dot(&frame.origin);
        let n = a.norm();
        if n <= 1e-12 {
            if b < -TAU * scale {
                return None;
            }
            continue;
        }
        out.push((a / n, b / n));
    }
    Some(out)
}

/// A full-dimensional convex cell in its own frame.
#[derive(Clone, Debug)]
pub struct Cell {
    pub frame: Frame,
    pub hull: LocalHull,
    pub volume: f64,
}

impl Cell {
    /// Builds the cell spanned by `points`, which must be affinely
    /// independent enough to span the frame they determine.
    pub fn from_points(points: &[Vector]) -> Result<Cell> {
        let frame = Frame::of_points(points, 1e-10);
        let local: Vec<Vector> = points.iter().map(|p| frame.to_local(p)).collect();
        let hull = hull::hull(&local)?;
        let volume = if frame.dim() == 0 { 1.0 } else { hull::hull_volume(&hull) };
        Ok(Cell { frame, hull, volume })
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// `vol_k(cell ∩ region)` for a convex region given by global halfspaces.
    pub fn volume_within(&self, hs: &[Halfspace]) -> Result<f64> {
        let Some(rows) = restrict(&self.frame, hs) else {
            return Ok(0.0);
        };
        self.volume_within_local(&rows)
    }

    pub fn volume_within_local(&self, rows: &LocalRows) -> Result<f64> {
        let k = self.dim();
        let verts = &self.hull.vertices;
        let scale = coordinate_scale(verts);
        let tol = TAU * scale;
        if k == 0 {
            return Ok(if rows.iter().all(|(_, b)| *b >= -tol) { 1.0 } else { 0.0 });
        }
        let mut active = Vec::new();
        for (a, b) in rows {
            let slack: Vec<f64> = verts.iter().map(|v| a.dot(v) - b).collect();
            if slack.iter().all(|s| *s >= -tol) {
                // Whole cell on the far side (up to a null set).
                return Ok(0.0);
            }
            if slack.iter().any(|s| *s > tol) {
                active.push((a.clone(), *b));
            }
        }
        if active.is_empty() {
            return Ok(self.volume);
        }
        if k == 1 {
            let (mut lo, mut hi) = (verts[0][0].min(verts[1][0]), verts[0][0].max(verts[1][0]));
            for (a, b) in &active {
                if a[0] > 0.0 {
                    hi = hi.min(b / a[0]);
                } else {
                    lo = lo.max(b / a[0]);
                }
            }
            return Ok((hi - lo).max(0.0));
        }
        let mut normals: Vec<Vector> = self.hull.facets.iter().map(|f| f.normal.clone()).collect();
        let mut offsets: Vec<f64> = self.hull.facets.iter().map(|f| f.offset).collect();
        for (a, b) in active {
            normals.push(a);
            offsets.push(b);
        }
        let pts = enumerate_vertices(&normals, &offsets, k, scale);
        if pts.len() <= k {
            return Ok(0.0);
        }
        Ok(hull::volume(&pts))
    }
}
