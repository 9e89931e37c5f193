use crate::error::Result;
use crate::geom::{Angle, AngleBudget, AngleMethod, Cone, Face, HPolytope};
use crate::linalg::{span_basis, Frame, Vector};

/// Normalized measure of a face's normal cone.
#[derive(Clone, Debug)]
pub struct ExternalAngle {
    pub face: Face,
    pub gamma: f64,
    pub method: AngleMethod,
    pub stderr: f64,
}

pub(crate) fn face_key(face: &Face) -> u64 {
    face.vertices.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &v| (h ^ v as u64).wrapping_mul(0x100_0000_01b3))
}

/// External angle `γ(F, P)`: the normal cone measured inside the affine hull
/// of `P`, so it does not depend on the ambient dimension.
pub fn external_angle(p: &HPolytope, face: &Face, budget: &AngleBudget) -> Result<ExternalAngle> {
    let a: Angle = p.local_normal_cone(face).angle(budget, face_key(face))?;
    Ok(ExternalAngle { face: face.clone(), gamma: a.value, method: a.method, stderr: a.stderr })
}

/// Internal angle `β(F, P)`: the tangent cone of `P` at `F`, reduced modulo
/// the direction space of `F` and measured inside its span.
pub fn internal_angle(p: &HPolytope, face: &Face, budget: &AngleBudget) -> Result<Angle> {
    let local = p.local_vertices();
    let fv: Vec<Vector> = face.vertices.iter().map(|&i| local[i].clone()).collect();
    let ff = Frame::of_points(&fv, 1e-10);
    let lin = ff.basis.clone();
    let project = |v: &Vector| {
        let mut w = v.clone();
        for b in &lin {
            w -= b * b.dot(v);
        }
        w
    };
    let gens: Vec<Vector> = local
        .iter()
        .enumerate()
        .filter(|(i, _)| !face.vertices.contains(i))
        .map(|(_, v)| project(&(v - &ff.origin)))
        .filter(|w| w.norm() > 1e-12)
        .collect();
    if gens.is_empty() || span_basis(&gens, 1e-10).is_empty() {
        return Ok(Angle { value: 1.0, stderr: 0.0, method: AngleMethod::Exact });
    }
    Cone::new(gens).angle(budget, face_key(face) ^ 0x1)
}
