//! Small dense linear-algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

pub fn vector(xs: &[f64]) -> Vector {
    DVector::from_column_slice(xs)
}

pub fn unit(dim: usize, i: usize) -> Vector {
    let mut v = Vector::zeros(dim);
    v[i] = 1.0;
    v
}

/// Orthonormal basis of the span of `vectors`.
///
/// Greedy Gram-Schmidt that always pivots on the largest remaining residual,
/// with one re-orthogonalization pass. Residuals below `tol` (relative to the
/// largest input norm) are treated as zero.
pub fn span_basis(vectors: &[Vector], tol: f64) -> Vec<Vector> {
    let Some(first) = vectors.first() else {
        return Vec::new();
    };
    let dim = first.len();
    let scale = vectors.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let mut residuals: Vec<Vector> = vectors.to_vec();
    let mut basis: Vec<Vector> = Vec::new();
    while basis.len() < dim {
        let (idx, norm) = residuals
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.norm()))
            .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if norm <= tol * scale {
            break;
        }
        let mut q = &residuals[idx] / norm;
        for b in &basis {
            let c = b.dot(&q);
            q -= b * c;
        }
        let qn = q.norm();
        if qn <= tol {
            break;
        }
        q /= qn;
        for r in residuals.iter_mut() {
            let c = q.dot(r);
            *r -= &q * c;
        }
        basis.push(q);
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of an orthonormal family.
pub fn complement_basis(basis: &[Vector], dim: usize) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for i in 0..dim {
        if basis.len() + out.len() == dim {
            break;
        }
        let mut v = unit(dim, i);
        for _ in 0..2 {
            for b in basis.iter().chain(out.iter()) {
                let c = b.dot(&v);
                v -= b * c;
            }
        }
        let n = v.norm();
        if n > 1e-6 {
            out.push(v / n);
        }
    }
    out
}

/// An affine subspace given by an origin and an orthonormal direction basis.
#[derive(Clone, Debug)]
pub struct Frame {
    pub origin: Vector,
    pub basis: Vec<Vector>,
}

impl Frame {
    /// Affine hull of a nonempty point set, anchored at the centroid.
    pub fn of_points(points: &[Vector], tol: f64) -> Frame {
        let origin = centroid(points);
        let diffs: Vec<Vector> = points.iter().map(|p| p - &origin).collect();
        let basis = if diffs.is_empty() { Vec::new() } else { span_basis(&diffs, tol) };
        Frame { origin, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    pub fn to_local(&self, x: &Vector) -> Vector {
        let d = x - &self.origin;
        Vector::from_iterator(self.basis.len(), self.basis.iter().map(|b| b.dot(&d)))
    }

    pub fn direction_to_local(&self, u: &Vector) -> Vector {
        Vector::from_iterator(self.basis.len(), self.basis.iter().map(|b| b.dot(u)))
    }

    pub fn to_global(&self, y: &Vector) -> Vector {
        let mut x = self.origin.clone();
        for (b, c) in self.basis.iter().zip(y.iter()) {
            x += b * *c;
        }
        x
    }

    pub fn direction_to_global(&self, y: &Vector) -> Vector {
        let mut x = Vector::zeros(self.origin.len());
        for (b, c) in self.basis.iter().zip(y.iter()) {
            x += b * *c;
        }
        x
    }

    pub fn complement(&self) -> Vec<Vector> {
        complement_basis(&self.basis, self.ambient_dim())
    }

    /// Distance from `x` to the affine subspace.
    pub fn distance(&self, x: &Vector) -> f64 {
        let y = self.to_local(x);
        (self.to_global(&y) - x).norm()
    }
}

pub fn centroid(points: &[Vector]) -> Vector {
    let Some(first) = points.first() else {
        return Vector::zeros(0);
    };
    let mut c = Vector::zeros(first.len());
    for p in points {
        c += p;
    }
    c / points.len() as f64
}

/// Solve a square system, rejecting (near-)singular matrices.
pub fn solve_square(a: Matrix, b: &Vector) -> Option<Vector> {
    let n = a.nrows();
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300);
    let lu = a.lu();
    let det = lu.determinant();
    if det.abs() <= 1e-12 * scale.powi(n as i32) {
        return None;
    }
    lu.solve(b)
}

/// Least-squares solve via SVD; returns the solution and the numerical rank.
pub fn least_squares(a: &Matrix, b: &Vector, rcond: f64) -> (Vector, usize) {
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().fold(0.0f64, |m, s| m.max(*s));
    let rank = svd.singular_values.iter().filter(|s| **s > rcond * smax).count();
    let x = svd
        .solve(b, rcond * smax)
        .unwrap_or_else(|_| Vector::zeros(a.ncols()));
    (x, rank)
}

/// Visit every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

/// Volume of the unit ball in dimension `n`: π^{n/2} / Γ(n/2 + 1).
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * std::f64::consts::PI / n as f64 * unit_ball_volume(n - 2),
    }
}

/// Surface area of the unit sphere S^{n-1} ⊂ R^n.
pub fn unit_sphere_area(n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    n as f64 * unit_ball_volume(n)
}

/// ∫_0^x sin^n(t) dt, by the standard reduction formula.
pub fn sin_power_integral(n: usize, x: f64) -> f64 {
    match n {
        0 => x,
        1 => 1.0 - x.cos(),
        _ => {
            let nf = n as f64;
            -x.sin().powi(n as i32 - 1) * x.cos() / nf
                + (nf - 1.0) / nf * sin_power_integral(n - 2, x)
        }
    }
}

/// ∫_a^b cos^n(t) dt.
pub fn cos_power_integral(n: usize, a: f64, b: f64) -> f64 {
    fn prim(n: usize, x: f64) -> f64 {
        match n {
            0 => x,
            1 => x.sin(),
            _ => {
                let nf = n as f64;
                x.cos().powi(n as i32 - 1) * x.sin() / nf + (nf - 1.0) / nf * prim(n - 2, x)
            }
        }
    }
    prim(n, b) - prim(n, a)
}
