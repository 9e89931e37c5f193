//! Minimum-norm point of a finite point hull (Wolfe's algorithm) and
//! nonnegative least squares (Lawson–Hanson).

use crate::linalg::{Matrix, Vector};

/// Result of a min-norm-point solve.
#[derive(Clone, Debug)]
pub struct MinNorm {
    pub point: Vector,
    pub norm: f64,
    /// Convex weights over the input points (zero for inactive points).
    pub weights: Vec<f64>,
}

/// Minimum-norm point of `conv(points)`.
///
/// Panics on an empty input.
pub fn min_norm_point(points: &[Vector]) -> MinNorm {
    assert!(!points.is_empty(), "min_norm_point on an empty hull");
    let n = points.len();
    let scale = points.iter().map(|p| p.norm_squared()).fold(1e-300, f64::max);
    let tol = 1e-12 * scale;

    let start = (0..n)
        .min_by(|&a, &b| points[a].norm_squared().total_cmp(&points[b].norm_squared()))
        .unwrap();
    let mut active = vec![start];
    let mut w = vec![1.0];
    let mut x = points[start].clone();

    for _major in 0..(50 * n + 100) {
        let (j, xp) = (0..n)
            .map(|j| (j, x.dot(&points[j])))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if x.norm_squared() - xp <= tol || active.contains(&j) {
            break;
        }
        active.push(j);
        w.push(0.0);
        loop {
            let alpha = affine_minimizer(points, &active);
            if alpha.iter().all(|a| *a > 1e-14) {
                w = alpha;
                x = combine(points, &active, &w);
                break;
            }
            let mut theta = 1.0f64;
            for (wi, ai) in w.iter().zip(&alpha) {
                if *ai <= 1e-14 && *wi - *ai > 0.0 {
                    theta = theta.min(*wi / (*wi - *ai));
                }
            }
            for (wi, ai) in w.iter_mut().zip(&alpha) {
                *wi = theta * *ai + (1.0 - theta) * *wi;
            }
            let mut k = 0;
            while k < active.len() {
                if w[k] <= 1e-14 {
                    active.remove(k);
                    w.remove(k);
                } else {
                    k += 1;
                }
            }
            let total: f64 = w.iter().sum();
            for wi in w.iter_mut() {
                *wi /= total;
            }
            x = combine(points, &active, &w);
            if active.len() == 1 {
                break;
            }
        }
    }

    let mut weights = vec![0.0; n];
    for (i, wi) in active.iter().zip(&w) {
        weights[*i] += wi;
    }
    let norm = x.norm();
    MinNorm { point: x, norm, weights }
}

fn combine(points: &[Vector], active: &[usize], w: &[f64]) -> Vector {
    let mut x = Vector::zeros(points[0].len());
    for (i, wi) in active.iter().zip(w) {
        x += &points[*i] * *wi;
    }
    x
}

/// Weights of the min-norm point of the affine hull of the active points.
fn affine_minimizer(points: &[Vector], active: &[usize]) -> Vec<f64> {
    let m = active.len();
    let mut k = Matrix::zeros(m + 1, m + 1);
    let mut rhs = Vector::zeros(m + 1);
    for a in 0..m {
        for b in 0..m {
            k[(a, b)] = points[active[a]].dot(&points[active[b]]);
        }
        k[(a, m)] = 1.0;
        k[(m, a)] = 1.0;
    }
    rhs[m] = 1.0;
    let (sol, _) = crate::linalg::least_squares(&k, &rhs, 1e-13);
    (0..m).map(|i| sol[i]).collect()
}

/// Euclidean distance from `x` to `conv(points)`.
pub fn distance_to_hull(x: &Vector, points: &[Vector]) -> f64 {
    let shifted: Vec<Vector> = points.iter().map(|p| p - x).collect();
    min_norm_point(&shifted).norm
}

/// Nonnegative least squares `min ‖Σ λ_i cols_i − b‖` over `λ ≥ 0`.
pub fn nnls(cols: &[Vector], b: &Vector) -> Vec<f64> {
    let n = cols.len();
    let mut lambda = vec![0.0; n];
    if n == 0 {
        return lambda;
    }
    let scale = cols.iter().map(|c| c.norm()).fold(b.norm(), f64::max).max(1e-300);
    let tol = 1e-12 * scale * scale;
    let mut passive = vec![false; n];
    let residual = |lambda: &[f64]| -> Vector {
        let mut r = b.clone();
        for (c, l) in cols.iter().zip(lambda) {
            r -= c * *l;
        }
        r
    };
    for _ in 0..(3 * n + 10) {
        let r = residual(&lambda);
        let Some((j, wj)) = (0..n).filter(|&j| !passive[j]).map(|j| (j, cols[j].dot(&r))).max_by(|a, b| a.1.total_cmp(&b.1)) else {
            break;
        };
        if wj <= tol {
            break;
        }
        passive[j] = true;
        loop {
            let idx: Vec<usize> = (0..n).filter(|&k| passive[k]).collect();
            let a = Matrix::from_columns(&idx.iter().map(|&k| cols[k].clone()).collect::<Vec<_>>());
            let (z, _) = crate::linalg::least_squares(&a, b, 1e-13);
            if z.iter().all(|v| *v > 0.0) {
                for (t, &k) in idx.iter().enumerate() {
                    lambda[k] = z[t];
                }
                break;
            }
            let mut alpha = f64::INFINITY;
            for (t, &k) in idx.iter().enumerate() {
                if z[t] <= 0.0 {
                    alpha = alpha.min(lambda[k] / (lambda[k] - z[t]));
                }
            }
            for (t, &k) in idx.iter().enumerate() {
                lambda[k] += alpha * (z[t] - lambda[k]);
                if lambda[k] <= 1e-15 * scale {
                    lambda[k] = 0.0;
                    passive[k] = false;
                }
            }
            if !passive.iter().any(|p| *p) {
                break;
            }
        }
    }
    lambda
}

/// Euclidean projection of `x` onto `pos(generators)`.
pub fn project_to_cone(x: &Vector, generators: &[Vector]) -> Vector {
    let lambda = nnls(generators, x);
    let mut p = Vector::zeros(x.len());
    for (g, l) in generators.iter().zip(&lambda) {
        p += g * *l;
    }
    p
}
