use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::rng::{self, Rng};

/// `x ↦ R x + t` with `R ∈ SO(d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RigidMotion {
    pub rotation: Matrix,
    pub translation: Vector,
}

impl RigidMotion {
    pub fn new(rotation: Matrix, translation: Vector) -> Result<RigidMotion> {
        let d = rotation.nrows();
        if rotation.ncols() != d || translation.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: translation.len() });
        }
        let err = (rotation.transpose() * &rotation - Matrix::identity(d, d)).amax();
        if err > 1e-8 || (rotation.determinant() - 1.0).abs() > 1e-8 {
            return Err(Error::Invalid("rotation is not special orthogonal".into()));
        }
        Ok(RigidMotion { rotation, translation })
    }

    pub fn identity(d: usize) -> RigidMotion {
        RigidMotion { rotation: Matrix::identity(d, d), translation: Vector::zeros(d) }
    }

    pub fn translation(t: Vector) -> RigidMotion {
        let d = t.len();
        RigidMotion { rotation: Matrix::identity(d, d), translation: t }
    }

    /// Planar rotation by `theta` followed by translation.
    pub fn planar(theta: f64, t: [f64; 2]) -> RigidMotion {
        let (s, c) = theta.sin_cos();
        RigidMotion { rotation: Matrix::from_row_slice(2, 2, &[c, -s, s, c]), translation: Vector::from_column_slice(&t) }
    }

    /// Rotation about the `z` axis in R³.
    pub fn about_z(theta: f64, t: [f64; 3]) -> RigidMotion {
        let (s, c) = theta.sin_cos();
        RigidMotion {
            rotation: Matrix::from_row_slice(3, 3, &[c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0]),
            translation: Vector::from_column_slice(&t),
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        &self.rotation * x + &self.translation
    }

    pub fn apply_direction(&self, u: &Vector) -> Vector {
        &self.rotation * u
    }

    pub fn inverse(&self) -> RigidMotion {
        let rt = self.rotation.transpose();
        let t = -(&rt * &self.translation);
        RigidMotion { rotation: rt, translation: t }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RigidMotion) -> RigidMotion {
        RigidMotion { rotation: &self.rotation * &other.rotation, translation: self.apply(&other.translation) }
    }
}

/// Haar-distributed rotation: QR of a Gaussian matrix with the diagonal of
/// `R` made positive, then a column flip if the determinant is −1.
pub fn random_rotation(r: &mut Rng, d: usize) -> Matrix {
    let g = Matrix::from_iterator(d, d, (0..d * d).map(|_| rng::gaussian_vector(r, 1)[0]));
    let qr = g.qr();
    let mut q = qr.q();
    let rr = qr.r();
    for j in 0..d {
        if rr[(j, j)] < 0.0 {
            for i in 0..d {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    if q.determinant() < 0.0 {
        for i in 0..d {
            q[(i, 0)] = -q[(i, 0)];
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    #[test]
    fn inverse_and_compose() {
        let g = RigidMotion::planar(0.7, [1.0, -2.0]);
        let x = vector(&[0.3, 0.9]);
        assert!((g.inverse().apply(&g.apply(&x)) - &x).norm() < 1e-14);
        let h = g.compose(&g.inverse());
        assert!((h.apply(&x) - x).norm() < 1e-14);
    }

    #[test]
    fn haar_rotations_are_special_orthogonal() {
        let mut r = rng::stream(1, 0);
        for d in 2..5 {
            let q = random_rotation(&mut r, d);
            assert!(RigidMotion::new(q, Vector::zeros(d)).is_ok());
        }
    }

    #[test]
    fn rejects_reflections() {
        let m = Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert!(RigidMotion::new(m, Vector::zeros(2)).is_err());
    }
}
