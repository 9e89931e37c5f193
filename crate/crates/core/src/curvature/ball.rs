use crate::linalg::{binomial, unit_ball_volume};

use super::CurvatureProfile;

/// `V_k(B_r) = C(d,k)·(ω_d/ω_{d−k})·r^k` for `k = 0..=d`.
pub fn ball_intrinsic_volumes(d: usize, r: f64) -> CurvatureProfile {
    CurvatureProfile::exact(
        (0..=d).map(|k| binomial(d, k) * unit_ball_volume(d) / unit_ball_volume(d - k) * r.powi(k as i32)).collect(),
    )
}
