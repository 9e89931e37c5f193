use crate::error::{Error, Result};
use crate::geom::{HPolytope, RigidMotion};
use crate::linalg::Vector;

use super::{AffinePiece, DCFunction, PLConvex};

/// `max(0, max_i(a_i·x − b_i))` for the unit facet normals of `P`.
pub fn aura_polytope(p: &HPolytope) -> Result<DCFunction> {
    if !p.is_full_dimensional() {
        return Err(Error::Degenerate { expected: p.dim(), found: p.affine_dim() });
    }
    let mut pieces = vec![AffinePiece { a: Vector::zeros(p.dim()), b: 0.0 }];
    pieces.extend(p.facets().iter().map(|h| AffinePiece { a: h.normal.clone(), b: -h.offset }));
    Ok(DCFunction::convex(PLConvex::new(p.dim(), pieces)?))
}

/// `min(f₁, f₂) = (g₁+g₂) − max(g₁+h₂, g₂+h₁)`.
pub fn aura_min(f1: &DCFunction, f2: &DCFunction) -> DCFunction {
    DCFunction { g: f1.g.add(&f2.g), h: f1.g.add(&f2.h).max(&f2.g.add(&f1.h)) }
}

/// `f + g∘γ⁻¹`, an aura for `A ∩ γB`.
pub fn aura_sum_motion(f: &DCFunction, g: &DCFunction, gamma: &RigidMotion) -> DCFunction {
    DCFunction { g: f.g.add(&g.g.compose_inverse(gamma)), h: f.h.add(&g.h.compose_inverse(gamma)) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dc::weak_regularity;
    use crate::geom::AxisBox;
    use crate::linalg::vector;

    fn grid(d: usize, n: usize, lo: f64, hi: f64) -> Vec<Vector> {
        let total = n.pow(d as u32);
        (0..total)
            .map(|mut k| {
                Vector::from_iterator(
                    d,
                    (0..d).map(|_| {
                        let i = k % n;
                        k /= n;
                        lo + (hi - lo) * i as f64 / (n - 1) as f64
                    }),
                )
            })
            .collect()
    }

    #[test]
    fn square_aura_values() {
        let f = aura_polytope(&HPolytope::cube(2, -1.0, 1.0)).unwrap();
        assert_eq!(f.eval(&vector(&[2.0, 0.0])), 1.0);
        assert_eq!(f.eval(&vector(&[0.0, 0.0])), 0.0);
        assert_eq!(f.eval(&vector(&[2.0, 2.0])), 1.0);
    }

    #[test]
    fn cube_aura_regularity() {
        let f = aura_polytope(&HPolytope::cube(3, 0.0, 1.0)).unwrap();
        let cert = weak_regularity(&f, 0.0, &AxisBox::cube(3, -1.0, 2.0), 0.5).unwrap();
        assert!((cert.eps0().unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn zero_set_matches_membership() {
        let p = HPolytope::from_vertices(2, &[vector(&[0.0, 0.0]), vector(&[2.0, 0.3]), vector(&[0.4, 1.7])]).unwrap();
        let f = aura_polytope(&p).unwrap();
        for x in grid(2, 41, -0.5, 2.5) {
            assert_eq!(f.eval(&x) <= 1e-12, p.contains(&x), "{x}");
        }
    }

    #[test]
    fn min_of_auras() {
        let a = aura_polytope(&HPolytope::cube(2, 0.0, 1.0)).unwrap();
        let b = aura_polytope(&HPolytope::cube(2, 2.0, 3.0)).unwrap();
        let m = aura_min(&a, &b);
        assert!((m.eval(&vector(&[1.5, 0.5])) - 0.5).abs() < 1e-12);
        for x in grid(2, 10, -0.5, 3.5) {
            let expect = a.eval(&x).min(b.eval(&x));
            assert!((m.eval(&x) - expect).abs() < 1e-12);
        }
        let same = aura_min(&a, &a);
        for x in grid(3, 10, -1.0, 2.0).iter().map(|v| vector(&[v[0], v[1]])) {
            assert!((same.eval(&x) - a.eval(&x)).abs() < 1e-12);
        }
    }

    #[test]
    fn sum_with_motion() {
        let a = aura_polytope(&HPolytope::cube(2, -1.0, 1.0)).unwrap();
        let twice = aura_sum_motion(&a, &a, &RigidMotion::identity(2));
        for x in grid(2, 9, -3.0, 3.0) {
            assert!((twice.eval(&x) - 2.0 * a.eval(&x)).abs() < 1e-12);
        }
        let g = RigidMotion::planar(0.4, [0.7, 0.2]);
        let s = aura_sum_motion(&a, &a, &g);
        let moved = HPolytope::cube(2, -1.0, 1.0).transformed(&g);
        for x in grid(2, 31, -2.5, 2.5) {
            let inside = HPolytope::cube(2, -1.0, 1.0).contains(&x) && moved.contains(&x);
            assert_eq!(s.eval(&x) <= 1e-12, inside);
        }
        let cert = weak_regularity(&s, 0.0, &AxisBox::cube(2, -3.0, 3.0), 0.5).unwrap();
        assert!(cert.eps0().unwrap() > 0.1);
    }
}
