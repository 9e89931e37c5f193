//! Fixed inputs shared by the kernel benchmarks in `benches/`.

use kinemalab_core::content::PointCloud;
use kinemalab_core::geom::corpus::random_hull;
use kinemalab_core::rng::{self, gaussian_vector};
use kinemalab_core::{HPolytope, Polyconvex, Vector};

pub const SEED: u64 = 2024;

/// `n` Gaussian points in `R^d`.
pub fn gaussian_points(d: usize, n: usize, seed: u64) -> Vec<Vector> {
    let mut r = rng::stream(seed, 0);
    (0..n).map(|_| gaussian_vector(&mut r, d)).collect()
}

pub fn hull_pair(d: usize, n: usize) -> (HPolytope, HPolytope) {
    (random_hull(d, n, SEED).expect("hull"), random_hull(d, n, SEED + 1).expect("hull"))
}

/// Two overlapping unit-scale bodies for the kinematic Monte-Carlo kernel.
pub fn pkf_bodies() -> (Polyconvex, Polyconvex) {
    (Polyconvex::single(HPolytope::cube(2, 0.0, 1.0)), Polyconvex::single(HPolytope::cube(2, 0.0, 0.5)))
}

/// Points on the unit circle, a one-dimensional cloud in the plane.
pub fn circle_cloud(n: usize) -> PointCloud {
    let pts: Vec<Vector> = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            Vector::from_vec(vec![t.cos(), t.sin()])
        })
        .collect();
    PointCloud::new(2, &pts)
}
