use serde::Serialize;

use crate::curvature::ball_intrinsic_volumes;
use crate::error::{Error, Result};
use crate::linalg::{binomial, cos_power_integral, least_squares, sin_power_integral, unit_ball_volume, unit_sphere_area, Matrix, Vector};
use crate::quad::tanh_sinh;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConstantEntry {
    pub k: usize,
    pub l: usize,
    pub value: f64,
}

/// `c^j_{k,l}` for `k + l = d + j` in
/// `∫ Φ_j(A∩γB, E∩γF) dγ = Σ c^j_{k,l} Φ_k(A,E) Φ_l(B,F)`,
/// with `dγ` the rotation probability times Lebesgue translation measure.
#[derive(Clone, Debug, Serialize)]
pub struct KinematicConstants {
    pub d: usize,
    pub j: usize,
    pub entries: Vec<ConstantEntry>,
    /// Largest relative residual of the template system.
    pub residual: f64,
}

impl KinematicConstants {
    pub fn get(&self, k: usize, l: usize) -> Option<f64> {
        self.entries.iter().find(|e| e.k == k && e.l == l).map(|e| e.value)
    }
}

/// Default template radii `(r, s)`.
pub const TEMPLATE_PAIRS: [(f64, f64); 8] =
    [(0.5, 1.0), (0.7, 1.0), (0.9, 1.0), (1.0, 1.0), (1.3, 1.0), (1.7, 1.0), (2.2, 1.0), (2.9, 1.0)];

/// `V_j(B_r ∩ B_s(ρe_d))` for `|r−s| < ρ < r+s`, `j < d`.
///
/// The lens boundary is two spherical caps meeting along a `(d−2)`-sphere of
/// radius `a`; the caps contribute through their normal measure and the
/// ridge through the arc of normals between the two cap normals.
pub fn lens_intrinsic_volume(d: usize, j: usize, r: f64, s: f64, rho: f64) -> f64 {
    assert!(j < d && d >= 2);
    let h = (rho * rho + r * r - s * s) / (2.0 * rho);
    let a = (r * r - h * h).max(0.0).sqrt();
    let sd2 = unit_sphere_area(d - 1);
    let denom = (d - j) as f64 * unit_ball_volume(d - j);

    let cap = |radius: f64, cos_alpha: f64| -> f64 {
        let alpha = cos_alpha.clamp(-1.0, 1.0).acos();
        let omega = sd2 * sin_power_integral(d - 2, alpha);
        omega * binomial(d - 1, d - 1 - j) * radius.powi(j as i32) / denom
    };
    let mut v = cap(r, h / r) + cap(s, (rho - h) / s);
    if j + 2 <= d {
        let phi_r = h.atan2(a);
        let phi_s = (h - rho).atan2(a);
        let m = d - 2 - j;
        v += sd2 * binomial(d - 2, m) * a.powi(j as i32) * cos_power_integral(m, phi_s, phi_r) / denom;
    }
    v
}

/// `∫ V_j(B_r ∩ γB_s) dγ` under the rotation-probability normalization.
pub fn ball_pair_integral(d: usize, j: usize, r: f64, s: f64) -> f64 {
    let vb = |x: f64| ball_intrinsic_volumes(d, x).values[j];
    if j == d {
        return vb(r) * vb(s);
    }
    let inner = (r - s).abs();
    let nested = unit_ball_volume(d) * inner.powi(d as i32) * vb(r.min(s));
    let shell = tanh_sinh(
        |rho| unit_sphere_area(d) * rho.powi(d as i32 - 1) * lens_intrinsic_volume(d, j, r, s, rho),
        inner,
        r + s,
        1e-14,
    );
    nested + shell
}

/// Template solve over the default radius pairs.
pub fn kinematic_constants(d: usize, j: usize) -> Result<KinematicConstants> {
    kinematic_constants_with(d, j, &TEMPLATE_PAIRS)
}

/// Matches `∫V_j(B_r∩γB_s)dγ` against `Σ c_{k,l} V_k(B_r)V_l(B_s)` over the
/// given radius pairs and solves for the `c_{k,l}` by least squares.
pub fn kinematic_constants_with(d: usize, j: usize, pairs: &[(f64, f64)]) -> Result<KinematicConstants> {
    if d == 0 || j > d {
        return Err(Error::Precondition(format!("need 0 ≤ j ≤ d and d ≥ 1, got d={d}, j={j}")));
    }
    let ks: Vec<usize> = (j..=d).collect();
    let n = ks.len();
    if pairs.len() < n {
        return Err(Error::Precondition(format!("{n} unknowns need at least {n} radius pairs")));
    }
    let mut a = Matrix::zeros(pairs.len(), n);
    let mut b = Vector::zeros(pairs.len());
    for (row, &(r, s)) in pairs.iter().enumerate() {
        let lhs = if d == 1 { segment_pair_integral(j, r, s) } else { ball_pair_integral(d, j, r, s) };
        let vr = ball_intrinsic_volumes(d, r).values;
        let vs = ball_intrinsic_volumes(d, s).values;
        for (col, &k) in ks.iter().enumerate() {
            a[(row, col)] = vr[k] * vs[d + j - k] / lhs;
        }
        b[row] = 1.0;
    }
    let (c, rank) = least_squares(&a, &b, 1e-12);
    if rank < n {
        return Err(Error::Singular(format!("template system has rank {rank} < {n}")));
    }
    let residual = (&a * &c - &b).amax();
    let entries = ks.iter().zip(c.iter()).map(|(&k, &value)| ConstantEntry { k, l: d + j - k, value }).collect();
    Ok(KinematicConstants { d, j, entries, residual })
}

/// The one-dimensional case, where balls are segments: `∫χ = 2(r+s)` and
/// `∫length = 4rs`.
fn segment_pair_integral(j: usize, r: f64, s: f64) -> f64 {
    if j == 0 {
        2.0 * (r + s)
    } else {
        4.0 * r * s
    }
}
