use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{AxisBox, TAU};
use crate::linalg::Vector;

use super::{min_norm_clarke, refinement_cells, DCFunction};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum RegularityStatus {
    /// Every Clarke element over the band has norm at least `eps0`.
    Regular { eps0: f64 },
    /// The band `{c < f ≤ c+δ}` misses the window.
    Vacuous,
    /// A band cell whose Clarke hull (nearly) contains zero.
    Failed { cell_vertices: Vec<Vec<f64>>, witness: Vec<f64>, element: Vec<f64> },
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityCertificate {
    pub value: f64,
    pub window: AxisBox,
    pub delta: f64,
    pub status: RegularityStatus,
}

impl RegularityCertificate {
    pub fn eps0(&self) -> Option<f64> {
        match self.status {
            RegularityStatus::Regular { eps0 } => Some(eps0),
            _ => None,
        }
    }
}

fn to_vec(v: &Vector) -> Vec<f64> {
    v.iter().copied().collect()
}

/// Certifies `c` as a weakly regular value of `f` on `window` with band
/// height `delta`, exactly over the refinement complex.
pub fn weak_regularity(f: &DCFunction, c: f64, window: &AxisBox, delta: f64) -> Result<RegularityCertificate> {
    if !(delta > 0.0) {
        return Err(Error::Precondition("band height must be positive".into()));
    }
    if window.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: window.dim() });
    }
    let cells = refinement_cells(f, window)?;
    let mut eps0 = f64::INFINITY;
    let mut worst = None;
    for cell in &cells {
        if !(cell.f_max > c + TAU && cell.f_min <= c + delta) {
            continue;
        }
        let (p, n) = min_norm_clarke(&cell.clarke);
        if n < eps0 {
            eps0 = n;
            worst = Some((cell, p));
        }
    }
    let status = match worst {
        None => RegularityStatus::Vacuous,
        Some((cell, p)) if eps0 <= TAU => RegularityStatus::Failed {
            cell_vertices: cell.polytope.vertices().iter().map(to_vec).collect(),
            witness: to_vec(&cell.witness),
            element: to_vec(&p),
        },
        Some(_) => RegularityStatus::Regular { eps0 },
    };
    Ok(RegularityCertificate { value: c, window: window.clone(), delta, status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dc::{aura_polytope, AffinePiece, PLConvex};
    use crate::geom::HPolytope;
    use crate::linalg::vector;

    #[test]
    fn square_aura() {
        let f = aura_polytope(&HPolytope::cube(2, -1.0, 1.0)).unwrap();
        let cert = weak_regularity(&f, 0.0, &AxisBox::cube(2, -2.0, 2.0), 0.5).unwrap();
        assert!((cert.eps0().unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn absolute_value() {
        let f = DCFunction::convex(
            PLConvex::new(2, vec![AffinePiece { a: vector(&[1.0, 0.0]), b: 0.0 }, AffinePiece { a: vector(&[-1.0, 0.0]), b: 0.0 }])
                .unwrap(),
        );
        let cert = weak_regularity(&f, 0.0, &AxisBox::cube(2, -1.0, 1.0), 0.5).unwrap();
        assert!((cert.eps0().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn vacuous_band() {
        let f = DCFunction::convex(
            PLConvex::new(2, vec![AffinePiece { a: vector(&[0.0, 0.0]), b: 0.0 }, AffinePiece { a: vector(&[1.0, 0.0]), b: 0.0 }])
                .unwrap(),
        );
        let cert = weak_regularity(&f, 5.0, &AxisBox::cube(2, -1.0, 1.0), 1e6).unwrap();
        assert_eq!(cert.status, RegularityStatus::Vacuous);
    }

    #[test]
    fn failure_is_witnessed() {
        // f = −|x| + 1 has a critical maximum inside the band {0 < f ≤ 2}.
        let g = PLConvex::new(1, vec![AffinePiece { a: vector(&[0.0]), b: 1.0 }]).unwrap();
        let h = PLConvex::new(1, vec![AffinePiece { a: vector(&[1.0]), b: 0.0 }, AffinePiece { a: vector(&[-1.0]), b: 0.0 }]).unwrap();
        let f = DCFunction::new(g, h).unwrap();
        let cert = weak_regularity(&f, 0.0, &AxisBox::cube(1, -2.0, 2.0), 2.0).unwrap();
        assert!(matches!(cert.status, RegularityStatus::Failed { .. }));
    }
}
