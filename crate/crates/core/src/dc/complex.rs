use std::collections::BTreeMap;

use crate::error::Result;
use crate::geom::{AxisBox, HPolytope, Halfspace};
use crate::linalg::{centroid, Vector};

use super::{clarke_exact, ClarkeHull, DCFunction};

/// A relatively open face of the common refinement of the linearity regions
/// of `g` and `h`, clipped to a window. `f` is affine on it and its Clarke
/// differential is constant on the relative interior.
#[derive(Clone, Debug)]
pub struct RefinementCell {
    pub polytope: HPolytope,
    pub witness: Vector,
    pub f_min: f64,
    pub f_max: f64,
    pub clarke: ClarkeHull,
}

impl RefinementCell {
    pub fn dim(&self) -> usize {
        self.polytope.affine_dim()
    }
}

fn key(points: &[Vector]) -> Vec<Vec<i64>> {
    let mut k: Vec<Vec<i64>> = points.iter().map(|p| p.iter().map(|x| (x * 1e7).round() as i64).collect()).collect();
    k.sort();
    k
}

/// All faces (of every dimension) of the full-dimensional regions
/// `{g = g_i, h = h_j} ∩ window`, deduplicated and in canonical order.
pub fn refinement_cells(f: &DCFunction, window: &AxisBox) -> Result<Vec<RefinementCell>> {
    let d = f.dim();
    let gp = f.g.pieces();
    let hp = f.h.pieces();
    let mut faces: BTreeMap<(usize, Vec<Vec<i64>>), Vec<Vector>> = BTreeMap::new();
    for i in 0..gp.len() {
        for j in 0..hp.len() {
            let mut hs = window.halfspaces();
            for (k, q) in gp.iter().enumerate() {
                if k != i && (&q.a - &gp[i].a).amax() > 0.0 {
                    hs.push(Halfspace::new(&q.a - &gp[i].a, gp[i].b - q.b)?);
                }
            }
            for (l, q) in hp.iter().enumerate() {
                if l != j && (&q.a - &hp[j].a).amax() > 0.0 {
                    hs.push(Halfspace::new(&q.a - &hp[j].a, hp[j].b - q.b)?);
                }
            }
            let Some(region) = HPolytope::from_bounded_halfspaces(d, &hs)? else { continue };
            if !region.is_full_dimensional() || region.volume() <= 1e-12 {
                continue;
            }
            for face in region.faces()?.faces {
                let verts = region.face_vertices(&face);
                faces.entry((face.dim, key(&verts))).or_insert(verts);
            }
        }
    }
    faces
        .into_values()
        .map(|verts| {
            let polytope = HPolytope::from_vertices(d, &verts)?;
            let witness = centroid(polytope.vertices());
            let vals: Vec<f64> = polytope.vertices().iter().map(|v| f.eval(v)).collect();
            let clarke = clarke_exact(f, &witness)?;
            Ok(RefinementCell {
                f_min: vals.iter().copied().fold(f64::INFINITY, f64::min),
                f_max: vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                polytope,
                witness,
                clarke,
            })
        })
        .collect()
}
