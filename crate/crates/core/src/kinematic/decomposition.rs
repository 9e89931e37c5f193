use serde::Serialize;

use crate::curvature::{CurvatureData, Region};
use crate::error::{Error, Result};
use crate::geom::section::Cell;
use crate::geom::{intersect, AngleBudget, AxisBox, Cone, Face, HPolytope, RigidMotion};

/// Both sides of `Φ_k(A∩γB, E) = 𝒥_k(A, B, γ; E)`, where the right side
/// splits into the connecting term over pairs of proper faces, the faces of
/// `A` inside `γB`, the faces of `γB` inside `A`, and at `k = d` the common
/// interior.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DecompositionCheck {
    pub k: usize,
    pub lhs: f64,
    pub connecting: f64,
    pub from_a: f64,
    pub from_b: f64,
    pub interior: f64,
    pub rhs: f64,
    pub residual: f64,
}

struct FaceData {
    face: Face,
    poly: HPolytope,
    bbox: AxisBox,
}

fn proper_faces(p: &HPolytope) -> Result<Vec<FaceData>> {
    let d = p.dim();
    p.faces()?
        .faces
        .into_iter()
        .filter(|f| f.dim < d)
        .map(|face| {
            let poly = HPolytope::from_vertices(d, &p.face_vertices(&face))?;
            let bbox = poly.bounding_box();
            Ok(FaceData { face, poly, bbox })
        })
        .collect()
}

fn boxes_meet(a: &AxisBox, b: &AxisBox) -> bool {
    let tol = 1e-9 * (1.0 + a.diameter() + b.diameter());
    a.lo.iter().zip(&a.hi).zip(b.lo.iter().zip(&b.hi)).all(|((al, ah), (bl, bh))| al <= &(bh + tol) && bl <= &(ah + tol))
}

/// `vol_k(P ∩ E)` when `P` has dimension `k`, else zero.
fn localized_volume(p: &HPolytope, k: usize, region: &Region) -> Result<f64> {
    if p.affine_dim() != k {
        return Ok(0.0);
    }
    let cell = Cell::from_points(p.vertices())?;
    let mut v = 0.0;
    for (s, hs) in &region.terms {
        v += s * if hs.is_empty() { cell.volume } else { cell.volume_within(hs)? };
    }
    Ok(v)
}

fn check_full(p: &HPolytope) -> Result<()> {
    if p.is_full_dimensional() {
        Ok(())
    } else {
        Err(Error::Degenerate { expected: p.dim(), found: p.affine_dim() })
    }
}

/// Checks the decomposition for every `k = 0..=d`.
///
/// Fails with a general-position error when two proper faces meet with the
/// wrong dimension or their normal cones do not sum to a pointed cone.
pub fn decompose(a: &HPolytope, b: &HPolytope, gamma: &RigidMotion, region: &Region, budget: &AngleBudget) -> Result<Vec<DecompositionCheck>> {
    check_full(a)?;
    check_full(b)?;
    let d = a.dim();
    let gb = b.transformed(gamma);
    let fa = proper_faces(a)?;
    let fb = proper_faces(&gb)?;
    let mut connecting = vec![0.0; d + 1];
    for f in &fa {
        for g in &fb {
            if !boxes_meet(&f.bbox, &g.bbox) {
                continue;
            }
            let Some(meet) = intersect(&f.poly, &g.poly)? else { continue };
            let total = f.face.dim + g.face.dim;
            if total < d || meet.affine_dim() != total - d {
                return Err(Error::GeneralPosition(format!(
                    "faces of dimensions {} and {} meet in dimension {}",
                    f.face.dim,
                    g.face.dim,
                    meet.affine_dim()
                )));
            }
            let k = total - d;
            let cone: Cone = a.normal_cone(&f.face).sum(&gb.normal_cone(&g.face));
            if !cone.is_pointed() {
                return Err(Error::GeneralPosition("normal cones are not in general position".into()));
            }
            let key = crate::rng::mix(f.face.vertices.len() as u64, g.face.vertices.iter().fold(k as u64, |h, v| h * 31 + *v as u64));
            let angle = cone.angle(budget, key)?;
            connecting[k] += localized_volume(&meet, k, region)? * angle.value;
        }
    }
    let da = CurvatureData::new(a, budget)?;
    let db = CurvatureData::new(&gb, budget)?;
    let both = intersect(a, &gb)?;
    let lhs_data = match &both {
        Some(p) if p.is_full_dimensional() => Some(CurvatureData::new(p, budget)?),
        Some(_) => return Err(Error::GeneralPosition("bodies touch without overlapping".into())),
        None => None,
    };
    let mut out = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let side = |data: &CurvatureData, faces: &[FaceData], other: &HPolytope| -> Result<f64> {
            let mut s = 0.0;
            for (f, (face, _, gamma)) in faces.iter().zip(data.entries().filter(|e| e.0.dim < d)) {
                debug_assert_eq!(&f.face, face);
                if f.face.dim != k {
                    continue;
                }
                if let Some(part) = intersect(&f.poly, other)? {
                    s += localized_volume(&part, k, region)? * gamma;
                }
            }
            Ok(s)
        };
        let from_a = side(&da, &fa, &gb)?;
        let from_b = side(&db, &fb, a)?;
        let interior = match (&both, k == d) {
            (Some(p), true) => localized_volume(p, d, region)?,
            _ => 0.0,
        };
        let lhs = match &lhs_data {
            Some(data) => data.measure(k, region)?,
            None => 0.0,
        };
        let rhs = connecting[k] + from_a + from_b + interior;
        out.push(DecompositionCheck { k, lhs, connecting: connecting[k], from_a, from_b, interior, rhs, residual: (lhs - rhs).abs() });
    }
    Ok(out)
}

/// Connecting term of degree `k`: pairs of proper faces meeting in a
/// `k`-dimensional set, weighted by the angle of the summed normal cones.
pub fn connecting_term(a: &HPolytope, b: &HPolytope, gamma: &RigidMotion, k: usize, region: &Region) -> Result<f64> {
    let all = decompose(a, b, gamma, region, &AngleBudget::default())?;
    all.get(k).map(|c| c.connecting).ok_or_else(|| Error::Precondition(format!("degree {k} exceeds dimension")))
}

pub fn decomposition_check(a: &HPolytope, b: &HPolytope, gamma: &RigidMotion, k: usize, region: &Region) -> Result<DecompositionCheck> {
    let all = decompose(a, b, gamma, region, &AngleBudget::default())?;
    all.get(k).copied().ok_or_else(|| Error::Precondition(format!("degree {k} exceeds dimension")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shifted() -> (HPolytope, HPolytope, RigidMotion) {
        (HPolytope::cube(2, 0.0, 1.0), HPolytope::cube(2, 0.0, 1.0), RigidMotion::planar(0.0, [0.5, 0.5]))
    }

    #[test]
    fn shifted_squares() {
        let (a, b, g) = shifted();
        assert!((connecting_term(&a, &b, &g, 0, &Region::all()).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(connecting_term(&a, &b, &g, 1, &Region::all()).unwrap(), 0.0);
        let c0 = decomposition_check(&a, &b, &g, 0, &Region::all()).unwrap();
        assert!((c0.lhs - 1.0).abs() < 1e-12 && (c0.from_a - 0.25).abs() < 1e-12 && (c0.from_b - 0.25).abs() < 1e-12);
        assert!(c0.residual < 1e-12);
        let c1 = decomposition_check(&a, &b, &g, 1, &Region::all()).unwrap();
        assert!((c1.lhs - 1.0).abs() < 1e-12 && c1.residual < 1e-12);
        let c2 = decomposition_check(&a, &b, &g, 2, &Region::all()).unwrap();
        assert!((c2.lhs - 0.25).abs() < 1e-12 && c2.residual < 1e-12);
    }

    #[test]
    fn region_away_from_crossings() {
        let (a, b, g) = shifted();
        let e = Region::from_box(&AxisBox::new(vec![-1.0, -1.0], vec![0.4, 0.4]).unwrap());
        assert_eq!(connecting_term(&a, &b, &g, 0, &e).unwrap(), 0.0);
    }

    #[test]
    fn rotated_cubes() {
        let a = HPolytope::cube(3, 0.0, 1.0);
        let g = RigidMotion::new(
            crate::geom::random_rotation(&mut crate::rng::stream(17, 0), 3),
            crate::linalg::vector(&[0.45, 0.52, 0.38]),
        )
        .unwrap();
        let checks = decompose(&a, &a, &g, &Region::all(), &AngleBudget::default()).unwrap();
        for c in &checks {
            assert!(c.residual <= 1e-8, "{c:?}");
        }
    }

    #[test]
    fn shared_edge_is_not_generic() {
        let a = HPolytope::cube(2, 0.0, 1.0);
        let r = decompose(&a, &a, &RigidMotion::planar(0.0, [1.0, 0.3]), &Region::all(), &AngleBudget::default());
        assert!(matches!(r, Err(Error::GeneralPosition(_))));
    }
}
