//! Deterministic body generators for tests, benches and the CLI corpus.

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::rng::{self, gaussian_vector};

use super::{AxisBox, HPolytope, Polyconvex};

/// Convex hull of `n` standard Gaussian points in `R^d`.
///
/// Degenerate draws (fewer than `d+1` affinely independent points) move on to
/// the next stream of `seed`.
pub fn random_hull(d: usize, n: usize, seed: u64) -> Result<HPolytope> {
    if d == 0 || n < d + 1 {
        return Err(Error::Invalid(format!("random hull needs n ≥ d+1 points, got d={d}, n={n}")));
    }
    for attempt in 0..64u64 {
        let mut r = rng::stream(seed, attempt);
        let pts: Vec<Vector> = (0..n).map(|_| gaussian_vector(&mut r, d)).collect();
        let p = HPolytope::from_vertices(d, &pts)?;
        if p.is_full_dimensional() && p.width()? > 1e-3 {
            return Ok(p);
        }
    }
    Err(Error::GeneralPosition("no full-dimensional hull in 64 draws".into()))
}

/// A random Gaussian simplex.
pub fn random_simplex(d: usize, seed: u64) -> Result<HPolytope> {
    random_hull(d, d + 1, seed)
}

/// The box `[0, 1]^d`.
pub fn unit_box(d: usize) -> HPolytope {
    HPolytope::cube(d, 0.0, 1.0)
}

/// A square annulus `[0,3]² ∖ (1,2)²` built from four overlapping slabs,
/// extruded by `[0,1]` in the remaining coordinates. Its Euler characteristic
/// is zero.
pub fn union_ring(d: usize) -> Result<Polyconvex> {
    if d < 2 {
        return Err(Error::Invalid("union ring needs d ≥ 2".into()));
    }
    let slab = |lo: [f64; 2], hi: [f64; 2]| -> Result<HPolytope> {
        let mut l = lo.to_vec();
        let mut h = hi.to_vec();
        l.resize(d, 0.0);
        h.resize(d, 1.0);
        Ok(HPolytope::from_box(&AxisBox::new(l, h)?))
    };
    Polyconvex::new(vec![
        slab([0.0, 0.0], [3.0, 1.0])?,
        slab([0.0, 2.0], [3.0, 3.0])?,
        slab([0.0, 0.0], [1.0, 3.0])?,
        slab([2.0, 0.0], [3.0, 3.0])?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::euler_polyconvex;

    #[test]
    fn hulls_are_deterministic() {
        let a = random_hull(2, 8, 1).unwrap();
        let b = random_hull(2, 8, 1).unwrap();
        assert_eq!(a.vertices(), b.vertices());
        assert!(a.is_full_dimensional());
        assert_eq!(random_simplex(3, 4).unwrap().vertices().len(), 4);
    }

    #[test]
    fn ring_and_box() {
        assert_eq!(euler_polyconvex(&union_ring(2).unwrap()).unwrap(), 0);
        assert_eq!(euler_polyconvex(&union_ring(3).unwrap()).unwrap(), 0);
        let f = unit_box(3).faces().unwrap();
        assert_eq!(f.f_vector, vec![8, 12, 6]);
    }
}
