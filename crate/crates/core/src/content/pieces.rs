use std::f64::consts::PI;

use rand::Rng as _;
use rayon::prelude::*;

use crate::dc::NorEpsPiece;
use crate::error::{Error, Result};
use crate::geom::{AngleBudget, Cone, HPolytope, TAU};
use crate::linalg::{complement_basis, span_basis, unit_sphere_area, Frame, Vector};
use crate::qp::project_to_cone;
use crate::rng::{self, Rng};

/// `C ∩ S` for a pointed polyhedral cone `C`, or the whole unit sphere of a
/// linear subspace.
#[derive(Clone, Debug)]
pub struct SphericalPatch {
    span: Frame,
    /// Unit generators in span coordinates; empty for a full sphere.
    gens: Vec<Vector>,
    axis: Vector,
    cos_max: f64,
}

impl SphericalPatch {
    pub fn cone(generators: &[Vector]) -> Result<SphericalPatch> {
        let dim = generators.first().map(|g| g.len()).ok_or(Error::Empty)?;
        let span = Frame { origin: Vector::zeros(dim), basis: span_basis(generators, 1e-10) };
        let gens: Vec<Vector> = generators.iter().map(|g| span.direction_to_local(g).normalize()).collect();
        let axis = Cone::new(gens.clone()).pointed_axis().ok_or_else(|| Error::GeneralPosition("normal cone is not pointed".into()))?;
        let cos_max = gens.iter().map(|g| g.dot(&axis)).fold(1.0, f64::min);
        Ok(SphericalPatch { span, gens, axis, cos_max })
    }

    /// Unit sphere of the span of `basis`.
    pub fn sphere(basis: &[Vector]) -> SphericalPatch {
        let dim = basis[0].len();
        let span = Frame { origin: Vector::zeros(dim), basis: span_basis(basis, 1e-10) };
        let s = span.dim();
        SphericalPatch { span, gens: Vec::new(), axis: Vector::zeros(s), cos_max: -1.0 }
    }

    pub fn is_full(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.span.dim() - 1
    }

    fn measure(&self, budget: &AngleBudget) -> Result<f64> {
        let s = self.span.dim();
        if self.is_full() {
            return Ok(unit_sphere_area(s));
        }
        Ok(match s {
            1 => 1.0,
            2 => {
                let (lo, hi) = self.arc();
                hi - lo
            }
            _ => Cone::new(self.gens.clone()).angle(budget, 0)?.value * unit_sphere_area(s),
        })
    }

    /// Angular range of a planar cone around its axis.
    fn arc(&self) -> (f64, f64) {
        let perp = complement_basis(std::slice::from_ref(&self.axis), 2);
        self.gens.iter().map(|g| g.dot(&perp[0]).atan2(g.dot(&self.axis))).fold((0.0, 0.0), |(a, b), t| (f64::min(a, t), f64::max(b, t)))
    }

    fn contains(&self, u: &Vector) -> bool {
        if (u.norm() - 1.0).abs() > 1e-9 || self.span.distance(u) > 1e-9 {
            return false;
        }
        if self.is_full() {
            return true;
        }
        let y = self.span.direction_to_local(u);
        (project_to_cone(&y, &self.gens) - &y).norm() <= 1e-9
    }

    fn sample(&self, r: &mut Rng) -> Vector {
        let s = self.span.dim();
        if self.is_full() {
            return self.span.direction_to_global(&rng::unit_vector(r, s));
        }
        if s == 1 {
            return self.span.direction_to_global(&self.gens[0]);
        }
        let perp = complement_basis(std::slice::from_ref(&self.axis), s);
        if s == 2 {
            // Same perpendicular as in `arc`.
            let (lo, hi) = self.arc();
            let t = lo + (hi - lo) * r.random::<f64>();
            return self.span.direction_to_global(&(&self.axis * t.cos() + &perp[0] * t.sin()));
        }
        loop {
            let y = if s == 3 {
                // Uniform on the cap around the axis that holds the cone.
                let z = 1.0 - r.random::<f64>() * (1.0 - self.cos_max);
                let phi = 2.0 * PI * r.random::<f64>();
                let w = (1.0 - z * z).max(0.0).sqrt();
                &self.axis * z + &perp[0] * (w * phi.cos()) + &perp[1] * (w * phi.sin())
            } else {
                rng::unit_vector(r, s)
            };
            if (project_to_cone(&y, &self.gens) - &y).norm() <= 1e-12 {
                return self.span.direction_to_global(&y);
            }
        }
    }
}

/// One factor of a product piece.
#[derive(Clone, Debug)]
pub enum Factor {
    Point(Vector),
    /// A polytope, measured in its own affine dimension.
    Polytope(HPolytope),
    Spherical(SphericalPatch),
    /// The normal patch of a `nor_ε` piece.
    NormalPatch(Box<NorEpsPiece>),
}

impl Factor {
    pub fn ambient_dim(&self) -> usize {
        match self {
            Factor::Point(p) => p.len(),
            Factor::Polytope(p) => p.dim(),
            Factor::Spherical(s) => s.span.ambient_dim(),
            Factor::NormalPatch(p) => p.hull.dim(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Factor::Point(_) => 0,
            Factor::Polytope(p) => p.affine_dim(),
            Factor::Spherical(s) => s.dim(),
            Factor::NormalPatch(p) => p.patch_dim(),
        }
    }

    /// Measure in the factor's own dimension (a point count in dimension 0).
    pub fn measure(&self, budget: &AngleBudget) -> Result<f64> {
        match self {
            Factor::Point(_) => Ok(1.0),
            Factor::Polytope(p) => Ok(p.volume()),
            Factor::Spherical(s) => s.measure(budget),
            Factor::NormalPatch(p) => p.patch_measure(budget),
        }
    }

    pub fn contains(&self, x: &Vector) -> bool {
        match self {
            Factor::Point(p) => (p - x).norm() <= TAU,
            Factor::Polytope(p) => p.contains(x),
            Factor::Spherical(s) => s.contains(x),
            Factor::NormalPatch(p) => p.patch_contains(x),
        }
    }

    pub fn sample(&self, r: &mut Rng) -> Result<Vector> {
        match self {
            Factor::Point(p) => Ok(p.clone()),
            Factor::Polytope(p) => Ok(crate::dc::sample_polytope(p, r)),
            Factor::Spherical(s) => Ok(s.sample(r)),
            Factor::NormalPatch(p) => p.sample_patch(r).ok_or_else(|| Error::Precondition("empty normal patch".into())),
        }
    }
}

/// A product of factors, living in the concatenation of their ambient spaces.
#[derive(Clone, Debug)]
pub struct ProductPiece {
    pub factors: Vec<Factor>,
}

impl ProductPiece {
    pub fn new(factors: Vec<Factor>) -> ProductPiece {
        ProductPiece { factors }
    }

    pub fn ambient_dim(&self) -> usize {
        self.factors.iter().map(Factor::ambient_dim).sum()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(Factor::dim).sum()
    }

    pub fn measure(&self, budget: &AngleBudget) -> Result<f64> {
        self.factors.iter().map(|f| f.measure(budget)).product()
    }

    pub fn contains(&self, x: &Vector) -> bool {
        let mut off = 0;
        self.factors.iter().all(|f| {
            let n = f.ambient_dim();
            let part = x.rows(off, n).into_owned();
            off += n;
            f.contains(&part)
        })
    }

    pub fn sample(&self, r: &mut Rng) -> Result<Vector> {
        let parts: Vec<Vector> = self.factors.iter().map(|f| f.sample(r)).collect::<Result<_>>()?;
        Ok(Vector::from_iterator(self.ambient_dim(), parts.iter().flat_map(|p| p.iter().copied())))
    }
}

/// A finite union of product pieces, with a target dimension `m`.
#[derive(Clone, Debug)]
pub struct PieceSet {
    pub ambient_dim: usize,
    pub target_dim: usize,
    pub pieces: Vec<ProductPiece>,
}

impl PieceSet {
    pub fn new(ambient_dim: usize, target_dim: usize, pieces: Vec<ProductPiece>) -> Result<PieceSet> {
        for p in &pieces {
            if p.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: p.ambient_dim() });
            }
            if p.dim() > target_dim {
                return Err(Error::Precondition(format!("piece of dimension {} exceeds target {target_dim}", p.dim())));
            }
        }
        Ok(PieceSet { ambient_dim, target_dim, pieces })
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    /// `m`-measure of the union: the sum over pieces of full target dimension
    /// (the pieces meet only in lower-dimensional sets).
    pub fn measure(&self, budget: &AngleBudget) -> Result<f64> {
        let mut total = 0.0;
        for p in self.pieces.iter().filter(|p| p.dim() == self.target_dim) {
            total += p.measure(budget)?;
        }
        Ok(total)
    }

    /// Product of two piece sets, piece by piece.
    pub fn product(&self, other: &PieceSet) -> PieceSet {
        let mut pieces = Vec::with_capacity(self.pieces.len() * other.pieces.len());
        for a in &self.pieces {
            for b in &other.pieces {
                pieces.push(ProductPiece::new(a.factors.iter().chain(&b.factors).cloned().collect()));
            }
        }
        PieceSet { ambient_dim: self.ambient_dim + other.ambient_dim, target_dim: self.target_dim + other.target_dim, pieces }
    }

    /// `n` samples, split over target-dimension pieces in proportion to their
    /// measure by largest remainders. Lower-dimensional pieces are null sets
    /// and get none. Each piece draws from its own stream, so the result
    /// depends only on `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<Vector>> {
        let budget = AngleBudget { seed, ..AngleBudget::default() };
        let top: Vec<(usize, f64)> = self
            .pieces
            .iter()
            .enumerate()
            .filter(|(_, p)| p.dim() == self.target_dim)
            .map(|(i, p)| p.measure(&budget).map(|m| (i, m)))
            .collect::<Result<_>>()?;
        let total: f64 = top.iter().map(|t| t.1).sum();
        if top.is_empty() || !(total > 0.0) {
            return Ok(Vec::new());
        }
        let exact: Vec<f64> = top.iter().map(|t| t.1 / total * n as f64).collect();
        let mut counts: Vec<usize> = exact.iter().map(|x| x.floor() as usize).collect();
        let mut order: Vec<usize> = (0..top.len()).collect();
        order.sort_by(|&a, &b| (exact[b] - exact[b].floor()).total_cmp(&(exact[a] - exact[a].floor())).then(a.cmp(&b)));
        let short = n - counts.iter().sum::<usize>();
        for &k in order.iter().take(short) {
            counts[k] += 1;
        }
        let per_piece: Vec<Vec<Vector>> = top
            .par_iter()
            .zip(counts.par_iter())
            .map(|(&(i, _), &c)| {
                let mut r = rng::stream(rng::mix(seed, i as u64), 0);
                (0..c).map(|_| self.pieces[i].sample(&mut r)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(per_piece.into_iter().flatten().collect())
    }

    /// Largest distance between two vertices of the pieces' bounding data, an
    /// upper bound for the set's diameter.
    pub fn diameter_bound(&self) -> f64 {
        let d = self.ambient_dim;
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for p in &self.pieces {
            let mut off = 0;
            for f in &p.factors {
                let n = f.ambient_dim();
                let (flo, fhi): (Vec<f64>, Vec<f64>) = match f {
                    Factor::Point(x) => (x.iter().copied().collect(), x.iter().copied().collect()),
                    Factor::Polytope(q) => {
                        let b = q.bounding_box();
                        (b.lo.clone(), b.hi.clone())
                    }
                    _ => (vec![-1.0; n], vec![1.0; n]),
                };
                for k in 0..n {
                    lo[off + k] = lo[off + k].min(flo[k]);
                    hi[off + k] = hi[off + k].max(fhi[k]);
                }
                off += n;
            }
        }
        (0..d).map(|k| (hi[k] - lo[k]).max(0.0).powi(2)).sum::<f64>().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{unit, vector};

    #[test]
    fn patch_measures() {
        let b = AngleBudget::default();
        let quarter = SphericalPatch::cone(&[unit(2, 0), unit(2, 1)]).unwrap();
        assert!((quarter.measure(&b).unwrap() - PI / 2.0).abs() < 1e-12);
        let octant = SphericalPatch::cone(&[unit(3, 0), unit(3, 1), unit(3, 2)]).unwrap();
        assert!((octant.measure(&b).unwrap() - PI / 2.0).abs() < 1e-12);
        assert!((SphericalPatch::sphere(&[unit(3, 0), unit(3, 1)]).measure(&b).unwrap() - 2.0 * PI).abs() < 1e-12);
        assert_eq!(SphericalPatch::sphere(&[unit(3, 2)]).measure(&b).unwrap(), 2.0);
        assert_eq!(SphericalPatch::cone(&[unit(3, 2)]).unwrap().measure(&b).unwrap(), 1.0);
    }

    #[test]
    fn samples_land_in_their_patch() {
        let mut r = rng::stream(3, 0);
        let gens = [vector(&[1.0, 0.2, 0.1]), vector(&[0.1, 1.0, 0.3]), vector(&[0.2, 0.1, 1.0]), vector(&[0.7, 0.7, 0.7])];
        let p = SphericalPatch::cone(&gens).unwrap();
        let arc = SphericalPatch::cone(&[vector(&[1.0, 0.0, 1.0]), vector(&[1.0, 0.0, 0.0])]).unwrap();
        for _ in 0..200 {
            assert!(p.contains(&p.sample(&mut r)));
            let a = arc.sample(&mut r);
            assert!(arc.contains(&a) && a[1].abs() < 1e-12);
        }
        assert!(!p.contains(&vector(&[-1.0, 0.0, 0.0])));
    }

    #[test]
    fn cap_sampling_is_uniform() {
        // Octant: each coordinate is the largest one a third of the time.
        let p = SphericalPatch::cone(&[unit(3, 0), unit(3, 1), unit(3, 2)]).unwrap();
        let mut r = rng::stream(9, 0);
        let n = 30_000;
        let mut hits = [0usize; 3];
        for _ in 0..n {
            let u = p.sample(&mut r);
            let k = (0..3).max_by(|&a, &b| u[a].total_cmp(&u[b])).unwrap();
            hits[k] += 1;
        }
        for h in hits {
            assert!((h as f64 / n as f64 - 1.0 / 3.0).abs() < 0.015, "{hits:?}");
        }
    }

    #[test]
    fn allocation_follows_measure() {
        let seg = |a: f64, b: f64| Factor::Polytope(HPolytope::from_vertices(1, &[vector(&[a]), vector(&[b])]).unwrap());
        let set = PieceSet::new(1, 1, vec![ProductPiece::new(vec![seg(0.0, 3.0)]), ProductPiece::new(vec![seg(5.0, 6.0)]), ProductPiece::new(vec![Factor::Point(vector(&[9.0]))])]).unwrap();
        let s = set.sample(1000, 1).unwrap();
        assert_eq!(s.len(), 1000);
        assert_eq!(s.iter().filter(|x| x[0] <= 3.0).count(), 750);
        assert!(s.iter().all(|x| set.contains(x)));
        assert_eq!(set.sample(1000, 1).unwrap(), s);
        assert_eq!(set.measure(&AngleBudget::default()).unwrap(), 4.0);
    }
}
