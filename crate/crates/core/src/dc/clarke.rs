use crate::error::{Error, Result};
use crate::geom::TAU;
use crate::linalg::{Matrix, Vector};
use crate::lp;
use crate::qp::{distance_to_hull, min_norm_point};

use super::DCFunction;

/// A convex hull of gradient vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct ClarkeHull {
    points: Vec<Vector>,
}

impl ClarkeHull {
    /// Panics on an empty point list.
    pub fn new(points: Vec<Vector>) -> ClarkeHull {
        assert!(!points.is_empty(), "Clarke hull of no gradients");
        let mut uniq: Vec<Vector> = Vec::with_capacity(points.len());
        for p in points {
            if !uniq.iter().any(|q| (q - &p).amax() <= 1e-12) {
                uniq.push(p);
            }
        }
        uniq.sort_by(|a, b| a.iter().zip(b.iter()).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
        ClarkeHull { points: uniq }
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn contains(&self, v: &Vector, tol: f64) -> bool {
        distance_to_hull(v, &self.points) <= tol
    }

    /// `other ⊆ self` (vertex test).
    pub fn contains_hull(&self, other: &ClarkeHull, tol: f64) -> bool {
        other.points.iter().all(|p| self.contains(p, tol))
    }

    pub fn max_norm(&self) -> f64 {
        self.points.iter().map(|p| p.norm()).fold(0.0, f64::max)
    }

    pub fn minkowski_sum(&self, other: &ClarkeHull) -> ClarkeHull {
        let mut pts = Vec::with_capacity(self.points.len() * other.points.len());
        for p in &self.points {
            for q in &other.points {
                pts.push(p + q);
            }
        }
        ClarkeHull::new(pts)
    }

    pub fn rotated(&self, r: &Matrix) -> ClarkeHull {
        ClarkeHull::new(self.points.iter().map(|p| r * p).collect())
    }
}

/// `∂g(x)` for a max-affine `g`.
pub fn subdiff_convex(g: &super::PLConvex, x: &Vector) -> ClarkeHull {
    g.subdiff(x)
}

/// `∂g(x) − ∂h(x)`, which contains the Clarke differential of `g − h`.
pub fn clarke_superset(f: &DCFunction, x: &Vector) -> ClarkeHull {
    let dg = f.g.subdiff(x);
    let dh = f.h.subdiff(x);
    let neg = ClarkeHull::new(dh.points.iter().map(|p| -p).collect());
    dg.minkowski_sum(&neg)
}

/// Clarke differential of `g − h` at `x` as the hull of `a_i − c_j` over
/// active piece pairs whose joint linearity region is full-dimensional near
/// `x`.
///
/// Near `x` the region where `g`-piece `i` and `h`-piece `j` are both maximal
/// is `x + C_ij` for the cone `C_ij` cut out by the active pieces only, so
/// each pair costs one Chebyshev LP on the unit box.
pub fn clarke_exact(f: &DCFunction, x: &Vector) -> Result<ClarkeHull> {
    let d = f.dim();
    let ag = f.g.active(x);
    let ah = f.h.active(x);
    let gp = f.g.pieces();
    let hp = f.h.pieces();
    let origin = Vector::zeros(d);
    let mut grads = Vec::new();
    for &i in &ag {
        for &j in &ah {
            let mut rows: Vec<Vec<f64>> = Vec::new();
            for &k in &ag {
                if k != i {
                    rows.push((&gp[k].a - &gp[i].a).iter().copied().collect());
                }
            }
            for &l in &ah {
                if l != j {
                    rows.push((&hp[l].a - &hp[j].a).iter().copied().collect());
                }
            }
            let rhs = vec![0.0; rows.len()];
            let (t, _) = lp::chebyshev_margin(&rows, &rhs, d, 1.0, Some((&origin, 1.0)));
            if t > 1e-12 && t <= TAU {
                return Err(Error::ToleranceAmbiguity(format!("linearity region margin {t:.3e}")));
            }
            if t > TAU {
                grads.push(&gp[i].a - &hp[j].a);
            }
        }
    }
    if grads.is_empty() {
        return Err(Error::ToleranceAmbiguity("no full-dimensional linearity region at point".into()));
    }
    Ok(ClarkeHull::new(grads))
}

/// Minimum-norm element of a hull and its norm.
pub fn min_norm_clarke(hull: &ClarkeHull) -> (Vector, f64) {
    let r = min_norm_point(&hull.points);
    (r.point, r.norm)
}
