use crate::error::Result;
use crate::geom::section::Cell;
use crate::geom::{AngleBudget, Face, HPolytope, Polyconvex};

use super::angles::external_angle;
use super::{CurvatureProfile, Region};

struct FaceEntry {
    face: Face,
    cell: Cell,
    gamma: f64,
    stderr: f64,
}

/// Faces of a polytope with their cells and external angles, ready for
/// repeated localized evaluation.
pub struct CurvatureData {
    dim: usize,
    faces: Vec<FaceEntry>,
}

impl CurvatureData {
    pub fn new(p: &HPolytope, budget: &AngleBudget) -> Result<CurvatureData> {
        let lattice = p.faces()?;
        let faces = lattice
            .faces
            .into_iter()
            .map(|face| {
                let cell = Cell::from_points(&p.face_vertices(&face))?;
                let a = external_angle(p, &face, budget)?;
                Ok(FaceEntry { face, cell, gamma: a.gamma, stderr: a.stderr })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CurvatureData { dim: p.dim(), faces })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Φ_k(P, E) = Σ_{k-faces F} vol_k(F ∩ E)·γ(F, P)`.
    pub fn measure(&self, k: usize, region: &Region) -> Result<f64> {
        let mut total = 0.0;
        for f in self.faces.iter().filter(|f| f.face.dim == k) {
            for (sign, hs) in &region.terms {
                let v = if hs.is_empty() { f.cell.volume } else { f.cell.volume_within(hs)? };
                total += sign * v * f.gamma;
            }
        }
        Ok(total)
    }

    pub fn measures(&self, region: &Region) -> Result<Vec<f64>> {
        (0..=self.dim).map(|k| self.measure(k, region)).collect()
    }

    /// Global values with standard errors propagated from sampled angles.
    pub fn intrinsic_volumes(&self) -> CurvatureProfile {
        let mut values = vec![0.0; self.dim + 1];
        let mut var = vec![0.0; self.dim + 1];
        for f in &self.faces {
            values[f.face.dim] += f.cell.volume * f.gamma;
            var[f.face.dim] += (f.cell.volume * f.stderr).powi(2);
        }
        CurvatureProfile { values, stderr: var.into_iter().map(f64::sqrt).collect() }
    }

    /// `(face, vol_k(F), γ)` triples, for inspection and tests.
    pub fn entries(&self) -> impl Iterator<Item = (&Face, f64, f64)> {
        self.faces.iter().map(|f| (&f.face, f.cell.volume, f.gamma))
    }
}

pub fn curvature_measure(p: &HPolytope, k: usize, region: &Region) -> Result<f64> {
    CurvatureData::new(p, &AngleBudget::default())?.measure(k, region)
}

pub fn intrinsic_volumes(p: &HPolytope) -> Result<CurvatureProfile> {
    Ok(CurvatureData::new(p, &AngleBudget::default())?.intrinsic_volumes())
}

/// `Φ_k(∪K_i, E)` by inclusion–exclusion over the nerve.
pub fn polyconvex_measure(u: &Polyconvex, k: usize, region: &Region, budget: &AngleBudget) -> Result<f64> {
    let mut total = 0.0;
    for (idx, p) in u.nerve()? {
        let sign = if idx.len() % 2 == 1 { 1.0 } else { -1.0 };
        total += sign * CurvatureData::new(&p, budget)?.measure(k, region)?;
    }
    Ok(total)
}

pub fn intrinsic_volumes_polyconvex(u: &Polyconvex) -> Result<CurvatureProfile> {
    let d = u.dim();
    let mut values = vec![0.0; d + 1];
    let mut var = vec![0.0; d + 1];
    for (idx, p) in u.nerve()? {
        let sign = if idx.len() % 2 == 1 { 1.0 } else { -1.0 };
        let prof = CurvatureData::new(&p, &AngleBudget::default())?.intrinsic_volumes();
        for k in 0..=d {
            values[k] += sign * prof.values[k];
            var[k] += prof.stderr[k].powi(2);
        }
    }
    Ok(CurvatureProfile { values, stderr: var.into_iter().map(f64::sqrt).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::AxisBox;
    use crate::linalg::vector;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn cubes_and_segments() {
        assert!(close(&intrinsic_volumes(&HPolytope::cube(2, 0.0, 1.0)).unwrap().values, &[1.0, 2.0, 1.0]));
        assert!(close(&intrinsic_volumes(&HPolytope::cube(3, 0.0, 1.0)).unwrap().values, &[1.0, 3.0, 3.0, 1.0]));
        let seg = HPolytope::from_vertices(2, &[vector(&[0.0, 0.0]), vector(&[0.0, 2.5])]).unwrap();
        assert!(close(&intrinsic_volumes(&seg).unwrap().values, &[1.0, 2.5, 0.0]));
    }

    #[test]
    fn localized_square() {
        let sq = HPolytope::cube(2, 0.0, 1.0);
        let e = Region::from_box(&AxisBox::new(vec![0.0, 0.0], vec![0.5, 1.0]).unwrap());
        assert!((curvature_measure(&sq, 1, &e).unwrap() - 1.0).abs() < 1e-12);
        assert!((curvature_measure(&sq, 2, &e).unwrap() - 0.5).abs() < 1e-12);
        let corner = Region::from_box(&AxisBox::new(vec![0.9, 0.9], vec![1.1, 1.1]).unwrap());
        assert!((curvature_measure(&sq, 0, &corner).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn polyconvex_examples() {
        let a = HPolytope::cube(2, 0.0, 1.0);
        let far = HPolytope::cube(2, 3.0, 4.0);
        let v = intrinsic_volumes_polyconvex(&Polyconvex::new(vec![a.clone(), far]).unwrap()).unwrap().values;
        assert!((v[0] - 2.0).abs() < 1e-12 && (v[2] - 2.0).abs() < 1e-12);
        let b = HPolytope::from_box(&AxisBox::new(vec![1.0, 0.0], vec![2.0, 1.0]).unwrap());
        let v = intrinsic_volumes_polyconvex(&Polyconvex::new(vec![a.clone(), b]).unwrap()).unwrap().values;
        assert!(close(&v, &[1.0, 3.0, 2.0]));
        let single = intrinsic_volumes_polyconvex(&Polyconvex::single(a.clone())).unwrap();
        assert_eq!(single, intrinsic_volumes(&a).unwrap());
    }
}
