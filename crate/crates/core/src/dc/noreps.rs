use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{AngleBudget, AxisBox, Cone, HPolytope, RigidMotion, TAU};
use crate::linalg::{span_basis, unit_sphere_area, Frame, Vector};
use crate::rng::{self, Rng};

use super::{refinement_cells, weak_regularity, ClarkeHull, DCFunction, RegularityStatus};

/// One product piece `base × patch` of `nor_ε f`.
///
/// The patch is `{u ∈ S^{d−1} : ε·u ∈ H}` for the Clarke hull `H` of the
/// base cell. On the zero set `0 ∈ H`, so this is exactly the set of unit
/// `u` with `t·u ∈ H` for some `t ≥ ε`.
#[derive(Clone, Debug)]
pub struct NorEpsPiece {
    pub base: HPolytope,
    pub hull: ClarkeHull,
    pub eps: f64,
    span: Frame,
    local: HPolytope,
}

impl NorEpsPiece {
    fn new(base: HPolytope, hull: ClarkeHull, eps: f64) -> Result<NorEpsPiece> {
        let d = hull.dim();
        let span = Frame { origin: Vector::zeros(d), basis: span_basis(hull.points(), 1e-10) };
        let pts: Vec<Vector> = hull.points().iter().map(|p| span.direction_to_local(p)).collect();
        let local = HPolytope::from_vertices(span.dim(), &pts)?;
        Ok(NorEpsPiece { base, hull, eps, span, local })
    }

    pub fn base_dim(&self) -> usize {
        self.base.affine_dim()
    }

    /// Dimension of the patch as a subset of the sphere.
    pub fn patch_dim(&self) -> usize {
        self.span.dim() - 1
    }

    /// Orthonormal basis of the linear span containing the patch.
    pub fn patch_span(&self) -> &[Vector] {
        &self.span.basis
    }

    pub fn patch_contains(&self, u: &Vector) -> bool {
        if (u.norm() - 1.0).abs() > 1e-9 || self.span.distance(u) > 1e-9 {
            return false;
        }
        self.local.contains(&(self.span.direction_to_local(u) * self.eps))
    }

    pub fn contains(&self, x: &Vector, u: &Vector) -> bool {
        self.base.contains(x) && self.patch_contains(u)
    }

    /// Spherical measure of the patch in its own dimension (a point count
    /// for zero-dimensional patches).
    pub fn patch_measure(&self, budget: &AngleBudget) -> Result<f64> {
        let s = self.span.dim();
        let eps = self.eps;
        let facets = self.local.facets();
        match s {
            1 => {
                let (lo, hi) = self.local.vertices().iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v[0]), b.max(v[0])));
                Ok((hi >= eps - TAU) as u8 as f64 + (-lo >= eps - TAU) as u8 as f64)
            }
            2 => Ok(arc_measure(&self.local, eps)),
            _ => {
                if facets.iter().all(|h| h.offset >= eps - TAU) {
                    return Ok(unit_sphere_area(s));
                }
                let through_origin = facets.iter().filter(|h| h.offset.abs() <= TAU);
                let far_ok = facets.iter().all(|h| h.offset.abs() <= TAU || h.offset >= eps - TAU);
                if far_ok && through_origin.count() > 0 {
                    let cone = Cone::new(self.local.vertices().iter().filter(|v| v.norm() > TAU).cloned().collect());
                    if cone.is_pointed() {
                        return Ok(cone.angle(budget, 0)?.value * unit_sphere_area(s));
                    }
                }
                let mut r = rng::stream(budget.seed, 0);
                let n = budget.samples.max(1);
                let hits = (0..n).filter(|_| self.local.contains(&(rng::unit_vector(&mut r, s) * eps))).count();
                Ok(hits as f64 / n as f64 * unit_sphere_area(s))
            }
        }
    }

    /// Uniform sample from the base cell (rejection from its local box).
    pub fn sample_base(&self, r: &mut Rng) -> Vector {
        sample_polytope(&self.base, r)
    }

    /// Uniform sample from the patch (rejection from the sphere of its span).
    pub fn sample_patch(&self, r: &mut Rng) -> Option<Vector> {
        let s = self.span.dim();
        if s == 1 {
            let (lo, hi) = self.local.vertices().iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v[0]), b.max(v[0])));
            let opts: Vec<f64> = [(hi >= self.eps - TAU, 1.0), (-lo >= self.eps - TAU, -1.0)].iter().filter(|c| c.0).map(|c| c.1).collect();
            if opts.is_empty() {
                return None;
            }
            let pick = opts[rand::Rng::random_range(r, 0..opts.len())];
            return Some(&self.span.basis[0] * pick);
        }
        for _ in 0..100_000 {
            let y = rng::unit_vector(r, s);
            if self.local.contains(&(&y * self.eps)) {
                return Some(self.span.direction_to_global(&y));
            }
        }
        None
    }

    pub fn transformed(&self, g: &RigidMotion) -> Result<NorEpsPiece> {
        NorEpsPiece::new(self.base.transformed(g), self.hull.rotated(&g.rotation), self.eps)
    }
}

/// Uniform point of a polytope relative to its affine hull.
pub fn sample_polytope(p: &HPolytope, r: &mut Rng) -> Vector {
    let frame = p.frame();
    let k = frame.dim();
    if k == 0 {
        return p.vertices()[0].clone();
    }
    let local = p.local_vertices();
    let lo: Vec<f64> = (0..k).map(|i| local.iter().map(|v| v[i]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..k).map(|i| local.iter().map(|v| v[i]).fold(f64::NEG_INFINITY, f64::max)).collect();
    loop {
        let y = Vector::from_iterator(k, (0..k).map(|i| lo[i] + (hi[i] - lo[i]) * rand::Rng::random::<f64>(r)));
        if p.local_facets().iter().all(|f| f.normal.dot(&y) <= f.offset) {
            return frame.to_global(&y);
        }
    }
}

/// Length of `{θ : ε(cos θ, sin θ) ∈ P}` for a planar polygon `P`.
fn arc_measure(p: &HPolytope, eps: f64) -> f64 {
    let mut cuts = vec![0.0, 2.0 * PI];
    for h in p.facets() {
        // ε·(n·u) = b on the circle: n·u = b/ε.
        let c = h.offset / eps;
        if c.abs() < 1.0 {
            let phi = h.normal[1].atan2(h.normal[0]);
            let w = c.acos();
            for t in [phi - w, phi + w] {
                cuts.push(t.rem_euclid(2.0 * PI));
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let u = Vector::from_vec(vec![eps * mid.cos(), eps * mid.sin()]);
        if w[1] > w[0] && p.contains(&u) {
            total += w[1] - w[0];
        }
    }
    total
}

/// `nor_ε f` as a finite union of products.
#[derive(Clone, Debug)]
pub struct NorEpsSet {
    pub dim: usize,
    pub eps: f64,
    pub pieces: Vec<NorEpsPiece>,
}

impl NorEpsSet {
    pub fn contains(&self, x: &Vector, u: &Vector) -> bool {
        self.pieces.iter().any(|p| p.contains(x, u))
    }

    /// `(d−1)`-content in `ℝ^d × S^{d−1}`: the sum of `vol(base)·|patch|`
    /// over pieces of full product dimension.
    pub fn content(&self, budget: &AngleBudget) -> Result<f64> {
        let mut total = 0.0;
        for p in &self.pieces {
            if p.base_dim() + p.patch_dim() == self.dim - 1 {
                total += p.base.volume() * p.patch_measure(budget)?;
            }
        }
        Ok(total)
    }

    pub fn transformed(&self, g: &RigidMotion) -> Result<NorEpsSet> {
        Ok(NorEpsSet { dim: self.dim, eps: self.eps, pieces: self.pieces.iter().map(|p| p.transformed(g)).collect::<Result<_>>()? })
    }
}

/// Enumerates `nor_ε f` over the boundary cells of `f⁻¹(0)` inside `window`.
///
/// `f` must be certified: nonnegative on the window with `0` weakly regular.
pub fn nor_eps(f: &DCFunction, eps: f64, window: &AxisBox) -> Result<NorEpsSet> {
    if !(eps > 0.0) {
        return Err(Error::Precondition("ε must be positive".into()));
    }
    let cert = weak_regularity(f, 0.0, window, 1.0)?;
    if let RegularityStatus::Failed { witness, .. } = &cert.status {
        return Err(Error::Uncertified(format!("0 is not weakly regular near {witness:?}")));
    }
    let cells = refinement_cells(f, window)?;
    if let Some(c) = cells.iter().find(|c| c.f_min < -TAU) {
        return Err(Error::Uncertified(format!("function is negative near {:?}", c.witness.as_slice())));
    }
    let mut pieces = Vec::new();
    for cell in cells {
        if cell.f_max <= TAU && cell.clarke.max_norm() >= eps - TAU {
            pieces.push(NorEpsPiece::new(cell.polytope, cell.clarke, eps)?);
        }
    }
    Ok(NorEpsSet { dim: f.dim(), eps, pieces })
}
