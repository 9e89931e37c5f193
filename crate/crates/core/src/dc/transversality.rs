use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{intersect, AxisBox, HPolytope, RigidMotion, TAU};
use crate::linalg::{centroid, Vector};
use crate::qp::project_to_cone;

use super::{aura_sum_motion, clarke_exact, min_norm_clarke, nor_eps, refinement_cells, weak_regularity, DCFunction, RegularityStatus};

/// Outcome of the fiberwise antipodal test between `nor_ε f` and `γ·nor_ε g`.
#[derive(Clone, Debug, Serialize)]
pub struct Transversality {
    pub transversal: bool,
    /// Smallest angle between a normal patch of `f` and an antipodal patch of
    /// `γ·g` over pieces with meeting bases; `0` on failure, `+∞` when no
    /// bases meet.
    pub gap: f64,
    /// A base point and unit normal `u` with `u` normal to `f` and `−u`
    /// normal to `γ·g` there.
    pub witness: Option<(Vec<f64>, Vec<f64>)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Eps0Bound {
    pub value: f64,
    pub witness: Option<Vec<f64>>,
    pub transversality: Transversality,
}

fn cone_angle(u: &Vector, gens: &[Vector]) -> f64 {
    let p = project_to_cone(u, gens);
    let n = p.norm();
    if n <= 1e-12 {
        return std::f64::consts::FRAC_PI_2;
    }
    (u.dot(&p) / n).clamp(-1.0, 1.0).acos()
}

fn nonzero_dirs(points: &[Vector]) -> Vec<Vector> {
    points.iter().filter(|p| p.norm() > TAU).map(|p| p.normalize()).collect()
}

/// Checks `nor_ε f ∩ s(γ·nor_ε g) = ∅`, where `s` flips the normal.
///
/// `window_f` and `window_g` must contain the zero sets of `f` and `g`.
pub fn transversality_check(
    f: &DCFunction,
    g: &DCFunction,
    gamma: &RigidMotion,
    eps: f64,
    window_f: &AxisBox,
    window_g: &AxisBox,
) -> Result<Transversality> {
    let nf = nor_eps(f, eps, window_f)?;
    let ng = nor_eps(g, eps, window_g)?.transformed(gamma)?;
    let mut gap = f64::INFINITY;
    for p in &nf.pieces {
        for q in &ng.pieces {
            let Some(meet) = intersect(&p.base, &q.base)? else { continue };
            let d = f.dim();
            let hp = HPolytope::from_vertices(d, p.hull.points())?;
            let neg: Vec<Vector> = q.hull.points().iter().map(|v| -v).collect();
            let hq = HPolytope::from_vertices(d, &neg)?;
            if let Some(common) = intersect(&hp, &hq)? {
                if let Some(v) = common.vertices().iter().max_by(|a, b| a.norm().total_cmp(&b.norm())) {
                    if v.norm() >= eps - TAU {
                        let x = centroid(meet.vertices());
                        let u = v.normalize();
                        return Ok(Transversality {
                            transversal: false,
                            gap: 0.0,
                            witness: Some((x.iter().copied().collect(), u.iter().copied().collect())),
                        });
                    }
                }
            }
            let dp = nonzero_dirs(p.hull.points());
            let dq = nonzero_dirs(&neg);
            for u in &dp {
                gap = gap.min(cone_angle(u, &dq));
            }
            for u in &dq {
                gap = gap.min(cone_angle(u, &dp));
            }
        }
    }
    Ok(Transversality { transversal: true, gap, witness: None })
}

fn regular_eps(f: &DCFunction, window: &AxisBox) -> Result<Option<f64>> {
    match weak_regularity(f, 0.0, window, 1.0)?.status {
        RegularityStatus::Regular { eps0 } => Ok(Some(eps0)),
        RegularityStatus::Vacuous => Ok(None),
        RegularityStatus::Failed { witness, .. } => Err(Error::Uncertified(format!("0 is not weakly regular near {witness:?}"))),
    }
}

fn box_meet(a: &AxisBox, b: &AxisBox) -> Option<AxisBox> {
    let lo: Vec<f64> = a.lo.iter().zip(&b.lo).map(|(x, y)| x.max(*y)).collect();
    let hi: Vec<f64> = a.hi.iter().zip(&b.hi).map(|(x, y)| x.min(*y)).collect();
    if lo.iter().zip(&hi).any(|(l, h)| l >= h) {
        return None;
    }
    Some(AxisBox { lo, hi })
}

/// Lower bound on `ℓ(ξ + γη)` for `ξ ∈ ∂f(x)`, `η ∈ ∂g(γ⁻¹x)` over the
/// refinement cells of `f + g∘γ⁻¹` in `U ∩ γV` that leave `A ∩ γB`.
pub fn eps0_bound(f: &DCFunction, g: &DCFunction, gamma: &RigidMotion, u: &AxisBox, v: &AxisBox) -> Result<Eps0Bound> {
    let ef = regular_eps(f, u)?;
    let eg = regular_eps(g, v)?;
    let eps = match (ef, eg) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => 1.0,
    } / 2.0;
    let tr = transversality_check(f, g, gamma, eps, u, v)?;
    if !tr.transversal {
        let witness = tr.witness.as_ref().map(|w| w.0.clone());
        return Ok(Eps0Bound { value: 0.0, witness, transversality: tr });
    }
    let moved = AxisBox::of_points(&v.corners().iter().map(|c| gamma.apply(c)).collect::<Vec<_>>());
    let Some(window) = box_meet(u, &moved) else {
        return Ok(Eps0Bound { value: f64::INFINITY, witness: None, transversality: tr });
    };
    let h = aura_sum_motion(f, g, gamma);
    let inv = gamma.inverse();
    let mut best = f64::INFINITY;
    let mut witness = None;
    for cell in refinement_cells(&h, &window)? {
        if cell.f_max <= TAU {
            continue;
        }
        let xi = clarke_exact(f, &cell.witness)?;
        let eta = clarke_exact(g, &inv.apply(&cell.witness))?.rotated(&gamma.rotation);
        let (_, n) = min_norm_clarke(&xi.minkowski_sum(&eta));
        if n < best {
            best = n;
            witness = Some(cell.witness.iter().copied().collect());
        }
    }
    Ok(Eps0Bound { value: best, witness, transversality: tr })
}
