use crate::dc::{nor_eps, refinement_cells, DCFunction};
use crate::error::{Error, Result};
use crate::geom::{minkowski_sum, AxisBox, HPolytope, TAU};
use crate::linalg::Vector;

use super::covering::PointCloud;
use super::curve::{content_curve, eps_grid, estimate_content, ContentCurve, ContentEstimate};
use super::pieces::{Factor, PieceSet, ProductPiece, SphericalPatch};

/// Vertices of `p` on the face exposed by `u`.
fn exposed(p: &HPolytope, u: &Vector) -> Vec<Vector> {
    let h = p.support(u);
    let tol = TAU * p.scale().max(1.0);
    p.vertices().iter().filter(|v| v.dot(u) >= h - tol).cloned().collect()
}

/// `Σ_{A,B} = {(x − y, ξ) : ξ ∈ nor(A,x) ∩ nor(B,y)}` in `ℝ^d × S^{d−1}`.
///
/// Every proper face `H` of `A + B` splits uniquely as `F + G`, and its normal
/// cone is `N(A,F) ∩ N(B,G)`; so the pieces are `(F − G) × (N(A+B,H) ∩ S)`,
/// one per proper face of the sum, each of dimension `d − 1`.
pub fn sigma_set(a: &HPolytope, b: &HPolytope) -> Result<PieceSet> {
    let d = a.dim();
    let sum = minkowski_sum(a, b)?;
    if !sum.is_full_dimensional() {
        return Err(Error::Degenerate { expected: d, found: sum.affine_dim() });
    }
    let mut pieces = Vec::new();
    for face in sum.faces()?.faces.iter().filter(|f| f.dim < d) {
        let normals = sum.normal_cone(face).generators;
        let u = normals.iter().fold(Vector::zeros(d), |acc, n| acc + n.normalize());
        let fa = exposed(a, &u);
        let gb = exposed(b, &u);
        let diffs: Vec<Vector> = fa.iter().flat_map(|x| gb.iter().map(move |y| x - y)).collect();
        let base = HPolytope::from_vertices(d, &diffs)?;
        pieces.push(ProductPiece::new(vec![Factor::Polytope(base), Factor::Spherical(SphericalPatch::cone(&normals)?)]));
    }
    PieceSet::new(2 * d, d - 1, pieces)
}

/// `T_K`: pairs `(v, w)` of a unit direction `v` of a segment in `∂K` and a
/// unit normal `w` of `K` along it, in `S^{d−1} × S^{d−1}`.
pub fn tk_set(k: &HPolytope) -> Result<PieceSet> {
    let d = k.dim();
    if d < 2 {
        return Err(Error::Precondition("T_K needs d ≥ 2".into()));
    }
    if !k.is_full_dimensional() {
        return Err(Error::Degenerate { expected: d, found: k.affine_dim() });
    }
    let mut pieces = Vec::new();
    for face in k.faces()?.faces.iter().filter(|f| f.dim >= 1 && f.dim < d) {
        let normals = SphericalPatch::cone(&k.normal_cone(face).generators)?;
        let basis = k.face_frame(face).basis;
        if face.dim == 1 {
            for v in [basis[0].clone(), -&basis[0]] {
                pieces.push(ProductPiece::new(vec![Factor::Point(v), Factor::Spherical(normals.clone())]));
            }
        } else {
            pieces.push(ProductPiece::new(vec![Factor::Spherical(SphericalPatch::sphere(&basis)), Factor::Spherical(normals)]));
        }
    }
    PieceSet::new(2 * d, d - 2, pieces)
}

/// `graph ∂f ∩ (K × ℝ^d)`: each refinement cell times its Clarke hull.
pub fn graph_clarke_set(f: &DCFunction, window: &AxisBox) -> Result<PieceSet> {
    let d = f.dim();
    let mut pieces = Vec::new();
    for cell in refinement_cells(f, window)? {
        let hull = HPolytope::from_vertices(d, cell.clarke.points())?;
        if cell.dim() + hull.affine_dim() > d {
            return Err(Error::Precondition(format!("cell of dimension {} carries a {}-dimensional differential", cell.dim(), hull.affine_dim())));
        }
        pieces.push(ProductPiece::new(vec![Factor::Polytope(cell.polytope), Factor::Polytope(hull)]));
    }
    PieceSet::new(2 * d, d, pieces)
}

/// `nor_ε f ∩ (K × S^{d−1})` as a piece set.
pub fn nor_eps_set(f: &DCFunction, eps: f64, window: &AxisBox) -> Result<PieceSet> {
    let d = f.dim();
    let set = nor_eps(f, eps, window)?;
    let pieces = set
        .pieces
        .into_iter()
        .map(|p| ProductPiece::new(vec![Factor::Polytope(p.base.clone()), Factor::NormalPatch(Box::new(p))]))
        .collect();
    PieceSet::new(2 * d, d - 1, pieces)
}

/// Samples a piece set and builds its covering curve on the default grid.
pub fn piece_curve(set: &PieceSet, samples: usize, seed: u64, scales: usize) -> Result<ContentCurve> {
    let pts = set.sample(samples, seed)?;
    let cloud = PointCloud::new(set.ambient_dim, &pts);
    let diameter = if cloud.is_empty() { 1.0 } else { cloud.diameter_bound() };
    let grid = eps_grid(diameter, scales);
    Ok(content_curve(&cloud, &grid))
}

/// Content brackets and dimension fit of a piece set at its target dimension.
pub fn piece_content(set: &PieceSet, samples: usize, seed: u64, scales: usize) -> Result<ContentEstimate> {
    estimate_content(&piece_curve(set, samples, seed, scales)?, set.target_dim)
}

/// Content brackets and dimension fit of `nor_ε f` on a window.
pub fn nor_eps_content(f: &DCFunction, eps: f64, window: &AxisBox, samples: usize, seed: u64) -> Result<ContentEstimate> {
    piece_content(&nor_eps_set(f, eps, window)?, samples, seed, super::curve::DEFAULT_SCALES)
}
