use crate::error::{Error, Result};
use crate::linalg::{for_each_combination, solve_square, Frame, Matrix, Vector};
use crate::lp;

use super::cone::Cone;
use super::faces::{Face, FaceLattice};
use super::hull::{self, coordinate_scale, dedup_points, LocalFacet};
use super::motion::RigidMotion;
use super::{AxisBox, Halfspace, TAU};

/// A bounded convex polytope carrying both representations.
///
/// The polytope may be lower-dimensional: `frame` spans its affine hull,
/// `facets` are the facets relative to that hull and `equalities` pin the
/// hull down in the ambient space.
#[derive(Clone, Debug)]
pub struct HPolytope {
    dim: usize,
    frame: Frame,
    vertices: Vec<Vector>,
    local_vertices: Vec<Vector>,
    facets: Vec<Halfspace>,
    local_facets: Vec<LocalFacet>,
    equalities: Vec<Halfspace>,
    scale: f64,
}

/// Vertex representation.
#[derive(Clone, Debug)]
pub struct VPolytope {
    pub dim: usize,
    pub vertices: Vec<Vector>,
}

impl VPolytope {
    pub fn new(dim: usize, vertices: Vec<Vector>) -> Result<VPolytope> {
        Ok(HPolytope::from_vertices(dim, &vertices)?.to_v())
    }

    pub fn to_h(&self) -> Result<HPolytope> {
        HPolytope::from_vertices(self.dim, &self.vertices)
    }
}

impl HPolytope {
    /// Convex hull of a nonempty point set.
    pub fn from_vertices(dim: usize, points: &[Vector]) -> Result<HPolytope> {
        if points.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
        }
        if points.iter().any(|p| p.iter().any(|x| !x.is_finite())) {
            return Err(Error::Invalid("non-finite coordinate".into()));
        }
        let scale = coordinate_scale(points);
        let pts = dedup_points(points, scale);
        let mut frame = Frame::of_points(&pts, 1e-10);
        if frame.dim() == dim {
            frame = Frame { origin: Vector::zeros(dim), basis: (0..dim).map(|i| crate::linalg::unit(dim, i)).collect() };
        }
        let local: Vec<Vector> = pts.iter().map(|p| frame.to_local(p)).collect();
        let h = hull::hull(&local)?;
        let vertices: Vec<Vector> = h.vertices.iter().map(|v| frame.to_global(v)).collect();
        let facets = h
            .facets
            .iter()
            .map(|f| {
                let n = frame.direction_to_global(&f.normal);
                Halfspace { offset: f.offset + n.dot(&frame.origin), normal: n }
            })
            .collect();
        let equalities = frame
            .complement()
            .into_iter()
            .map(|n| Halfspace { offset: n.dot(&frame.origin), normal: n })
            .collect();
        Ok(HPolytope { dim, frame, vertices, local_vertices: h.vertices, facets, local_facets: h.facets, equalities, scale })
    }

    /// Intersection of halfspaces; `Ok(None)` when empty, `Err(Unbounded)` when
    /// the intersection is unbounded.
    pub fn from_halfspaces(dim: usize, halfspaces: &[Halfspace]) -> Result<Option<HPolytope>> {
        if let Some(h) = halfspaces.iter().find(|h| h.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: h.dim() });
        }
        let rows: Vec<Vec<f64>> = halfspaces.iter().map(|h| h.normal.iter().copied().collect()).collect();
        let rhs: Vec<f64> = halfspaces.iter().map(|h| h.offset).collect();
        let (margin, _) = lp::chebyshev_margin(&rows, &rhs, dim, 1.0, None);
        if margin < -TAU {
            return Ok(None);
        }
        if let Some(dir) = lp::recession_direction(&rows, dim) {
            return Err(Error::Unbounded(dir.iter().copied().collect()));
        }
        Self::from_bounded_halfspaces(dim, halfspaces)
    }

    /// As [`from_halfspaces`](Self::from_halfspaces) for systems known to be bounded.
    pub(crate) fn from_bounded_halfspaces(dim: usize, halfspaces: &[Halfspace]) -> Result<Option<HPolytope>> {
        let canon = canonicalize(halfspaces);
        let scale = 1.0 + canon.iter().fold(0.0f64, |m, h| m.max(h.offset.abs()));
        let rows: Vec<Vector> = canon.iter().map(|h| h.normal.clone()).collect();
        let rhs: Vec<f64> = canon.iter().map(|h| h.offset).collect();
        let verts = enumerate_vertices(&rows, &rhs, dim, scale);
        if verts.is_empty() {
            let r: Vec<Vec<f64>> = rows.iter().map(|v| v.iter().copied().collect()).collect();
            let (margin, _) = lp::chebyshev_margin(&r, &rhs, dim, 1.0, None);
            if margin > -TAU * scale {
                return Err(Error::ToleranceAmbiguity(format!("no vertices found but LP margin {margin:.3e}")));
            }
            return Ok(None);
        }
        Self::from_vertices(dim, &verts).map(Some)
    }

    pub fn from_box(b: &AxisBox) -> HPolytope {
        HPolytope::from_vertices(b.dim(), &b.corners()).expect("box corners span their hull")
    }

    pub fn cube(dim: usize, lo: f64, hi: f64) -> HPolytope {
        HPolytope::from_box(&AxisBox::cube(dim, lo, hi))
    }

    /// The standard simplex `conv{0, e_1, …, e_d}`.
    pub fn unit_simplex(dim: usize) -> HPolytope {
        let mut pts = vec![Vector::zeros(dim)];
        pts.extend((0..dim).map(|i| crate::linalg::unit(dim, i)));
        HPolytope::from_vertices(dim, &pts).expect("simplex")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn local_vertices(&self) -> &[Vector] {
        &self.local_vertices
    }

    pub fn local_facets(&self) -> &[LocalFacet] {
        &self.local_facets
    }

    /// Facets relative to the affine hull.
    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn equalities(&self) -> &[Halfspace] {
        &self.equalities
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Complete inequality description (equalities as opposite pairs).
    pub fn halfspaces(&self) -> Vec<Halfspace> {
        let mut out = self.facets.clone();
        for e in &self.equalities {
            out.push(e.clone());
            out.push(e.flipped());
        }
        out
    }

    pub fn contains(&self, x: &Vector) -> bool {
        let tol = TAU * self.scale;
        self.facets.iter().all(|h| h.eval(x) <= tol) && self.equalities.iter().all(|h| h.eval(x).abs() <= tol)
    }

    /// `h_K(u) = max_{x∈K} x·u`.
    pub fn support(&self, u: &Vector) -> f64 {
        self.vertices.iter().map(|v| v.dot(u)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// `{x ∈ K : x·n ≥ h_K(n) − t}`.
    pub fn cap(&self, n: &Vector, t: f64) -> Result<HPolytope> {
        if t <= 0.0 {
            return Err(Error::Precondition("cap depth must be positive".into()));
        }
        let level = self.support(n) - t;
        if self.vertices.iter().all(|v| v.dot(n) >= level) {
            return Ok(self.clone());
        }
        let mut hs = self.halfspaces();
        hs.push(Halfspace::new(-n, -level)?);
        Self::from_bounded_halfspaces(self.dim, &hs)?.ok_or(Error::Empty)
    }

    /// Minimal width `min_u h_K(u) + h_K(−u)`, i.e. the inradius of `ΔK`,
    /// which is attained at a facet normal of the origin-symmetric body `ΔK`.
    pub fn width(&self) -> Result<f64> {
        if !self.is_full_dimensional() {
            return Err(Error::Degenerate { expected: self.dim, found: self.affine_dim() });
        }
        let delta = difference_body(self)?;
        Ok(delta.facets.iter().map(|h| h.offset).fold(f64::INFINITY, f64::min))
    }

    /// Volume relative to the affine hull (`vol_k` for a `k`-dimensional polytope).
    pub fn volume(&self) -> f64 {
        match self.affine_dim() {
            0 => 1.0,
            _ => hull::volume(&self.local_vertices),
        }
    }

    pub fn centroid(&self) -> Vector {
        crate::linalg::centroid(&self.vertices)
    }

    pub fn bounding_box(&self) -> AxisBox {
        AxisBox::of_points(&self.vertices)
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    pub fn to_v(&self) -> VPolytope {
        VPolytope { dim: self.dim, vertices: self.vertices.clone() }
    }

    /// Image under a rigid motion; combinatorics and local coordinates are kept.
    pub fn transformed(&self, g: &RigidMotion) -> HPolytope {
        let map_h = |h: &Halfspace| {
            let n = g.apply_direction(&h.normal);
            Halfspace { offset: h.offset + n.dot(&g.translation), normal: n }
        };
        HPolytope {
            dim: self.dim,
            frame: Frame {
                origin: g.apply(&self.frame.origin),
                basis: self.frame.basis.iter().map(|b| g.apply_direction(b)).collect(),
            },
            vertices: self.vertices.iter().map(|v| g.apply(v)).collect(),
            local_vertices: self.local_vertices.clone(),
            facets: self.facets.iter().map(map_h).collect(),
            local_facets: self.local_facets.clone(),
            equalities: self.equalities.iter().map(map_h).collect(),
            scale: self.scale.max(coordinate_scale(&[g.translation.clone()])),
        }
    }

    pub fn translated(&self, t: &Vector) -> HPolytope {
        self.transformed(&RigidMotion::translation(t.clone()))
    }

    pub fn negated(&self) -> HPolytope {
        let pts: Vec<Vector> = self.vertices.iter().map(|v| -v).collect();
        HPolytope::from_vertices(self.dim, &pts).expect("reflection of a valid polytope")
    }

    /// All faces, from vertices up to the polytope itself.
    pub fn faces(&self) -> Result<FaceLattice> {
        FaceLattice::build(self)
    }

    /// Cone generated by the outer normals of the facets containing `face`,
    /// plus the orthogonal complement of the affine hull as lineality space.
    pub fn normal_cone(&self, face: &Face) -> Cone {
        Cone {
            generators: face.facets.iter().map(|&i| self.facets[i].normal.clone()).collect(),
            lineality: self.equalities.iter().map(|h| h.normal.clone()).collect(),
        }
    }

    /// The normal cone inside the affine hull, in frame coordinates.
    pub fn local_normal_cone(&self, face: &Face) -> Cone {
        Cone { generators: face.facets.iter().map(|&i| self.local_facets[i].normal.clone()).collect(), lineality: Vec::new() }
    }

    pub fn face_vertices(&self, face: &Face) -> Vec<Vector> {
        face.vertices.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    pub fn face_frame(&self, face: &Face) -> Frame {
        Frame::of_points(&self.face_vertices(face), 1e-10)
    }
}

/// Unit normals, drop exact duplicates, keep the tighter of parallel pairs.
fn canonicalize(halfspaces: &[Halfspace]) -> Vec<Halfspace> {
    let mut out: Vec<Halfspace> = Vec::with_capacity(halfspaces.len());
    for h in halfspaces {
        let n = h.normal.norm();
        let h = Halfspace { normal: &h.normal / n, offset: h.offset / n };
        if let Some(existing) = out.iter_mut().find(|e| (&e.normal - &h.normal).amax() < TAU) {
            existing.offset = existing.offset.min(h.offset);
        } else {
            out.push(h);
        }
    }
    out
}

/// Vertices of `{x : rows·x ≤ rhs}` by solving every `dim`-subset.
pub(crate) fn enumerate_vertices(rows: &[Vector], rhs: &[f64], dim: usize, scale: f64) -> Vec<Vector> {
    let tol = TAU * scale;
    let mut out: Vec<Vector> = Vec::new();
    if dim == 0 {
        if rhs.iter().all(|b| *b >= -tol) {
            out.push(Vector::zeros(0));
        }
        return out;
    }
    let mut a = Matrix::zeros(dim, dim);
    let mut b = Vector::zeros(dim);
    for_each_combination(rows.len(), dim, |subset| {
        for (r, &i) in subset.iter().enumerate() {
            for c in 0..dim {
                a[(r, c)] = rows[i][c];
            }
            b[r] = rhs[i];
        }
        let Some(x) = solve_square(a.clone(), &b) else { return };
        if rows.iter().zip(rhs).all(|(n, o)| n.dot(&x) - o <= tol) && !out.iter().any(|v| (v - &x).amax() <= 1e2 * tol) {
            out.push(x);
        }
    });
    out
}

/// `K ∩ L`, `Ok(None)` when empty. Lower-dimensional contact sets are returned
/// as (lower-dimensional) polytopes.
pub fn intersect(k: &HPolytope, l: &HPolytope) -> Result<Option<HPolytope>> {
    if k.dim != l.dim {
        return Err(Error::DimensionMismatch { expected: k.dim, found: l.dim });
    }
    if separated(k, l) || separated(l, k) {
        return Ok(None);
    }
    let mut hs = k.halfspaces();
    hs.extend(l.halfspaces());
    HPolytope::from_bounded_halfspaces(k.dim, &hs)
}

/// Like [`intersect`] but rejects nonempty intersections of lower dimension
/// than the operands.
pub fn intersect_generic(k: &HPolytope, l: &HPolytope) -> Result<Option<HPolytope>> {
    let r = intersect(k, l)?;
    if let Some(p) = &r {
        let expected = k.affine_dim().min(l.affine_dim());
        if p.affine_dim() < expected {
            return Err(Error::GeneralPosition(format!(
                "intersection has dimension {} instead of {expected}",
                p.affine_dim()
            )));
        }
    }
    Ok(r)
}

fn separated(k: &HPolytope, l: &HPolytope) -> bool {
    let margin = 1e-6 * k.scale.max(l.scale);
    let test = |h: &Halfspace| l.vertices.iter().all(|v| h.eval(v) > margin);
    k.facets.iter().any(test) || k.equalities.iter().any(|e| test(e) || test(&e.flipped()))
}

pub fn minkowski_sum(k: &HPolytope, l: &HPolytope) -> Result<HPolytope> {
    if k.dim != l.dim {
        return Err(Error::DimensionMismatch { expected: k.dim, found: l.dim });
    }
    let mut pts = Vec::with_capacity(k.vertices.len() * l.vertices.len());
    for a in &k.vertices {
        for b in &l.vertices {
            pts.push(a + b);
        }
    }
    HPolytope::from_vertices(k.dim, &pts)
}

/// `ΔK = K − K`.
pub fn difference_body(k: &HPolytope) -> Result<HPolytope> {
    minkowski_sum(k, &k.negated())
}
