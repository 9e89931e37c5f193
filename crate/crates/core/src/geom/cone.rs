use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{span_basis, Frame, Vector};
use crate::{lp, rng};

use super::hull;

/// A finitely generated cone `pos(generators) + lin(lineality)`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub generators: Vec<Vector>,
    pub lineality: Vec<Vector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngleMethod {
    Exact,
    MonteCarlo,
}

/// Normalized spherical measure of a cone within its linear span.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle {
    pub value: f64,
    pub stderr: f64,
    pub method: AngleMethod,
}

impl Angle {
    fn exact(value: f64) -> Angle {
        Angle { value, stderr: 0.0, method: AngleMethod::Exact }
    }
}

/// Sampling budget for cones of span dimension four or more.
#[derive(Clone, Copy, Debug)]
pub struct AngleBudget {
    pub samples: usize,
    pub seed: u64,
}

impl Default for AngleBudget {
    fn default() -> Self {
        AngleBudget { samples: 200_000, seed: 0x5eed }
    }
}

impl Cone {
    pub fn new(generators: Vec<Vector>) -> Cone {
        Cone { generators, lineality: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.generators.first().or(self.lineality.first()).map_or(0, |v| v.len())
    }

    /// Orthonormal basis of the linear span of the generators.
    pub fn span(&self) -> Vec<Vector> {
        span_basis(&self.generators, 1e-10)
    }

    /// Minkowski sum of two cones.
    pub fn sum(&self, other: &Cone) -> Cone {
        Cone {
            generators: self.generators.iter().chain(&other.generators).cloned().collect(),
            lineality: self.lineality.iter().chain(&other.lineality).cloned().collect(),
        }
    }

    /// An interior direction `c` with `g·c ≥ t > 0` for every generator, if the
    /// cone (ignoring lineality) is pointed.
    pub fn pointed_axis(&self) -> Option<Vector> {
        let units: Vec<Vector> = self.generators.iter().map(|g| g.normalize()).collect();
        let dim = self.ambient_dim();
        if units.is_empty() {
            return Some(Vector::zeros(dim));
        }
        let mut c = Vector::zeros(dim);
        for u in &units {
            c += u;
        }
        if c.norm() > 1e-9 {
            let c = c.normalize();
            if units.iter().all(|u| u.dot(&c) > 1e-7) {
                return Some(c);
            }
        }
        // max t s.t. u_i·c ≥ t, |c|∞ ≤ 1, restricted to the span.
        let rows: Vec<Vec<f64>> = units.iter().map(|u| u.iter().map(|x| -x).collect()).collect();
        let rhs = vec![0.0; rows.len()];
        let center = Vector::zeros(dim);
        let (t, c) = lp::chebyshev_margin(&rows, &rhs, dim, 1.0, Some((&center, 1.0)));
        if t > 1e-9 && c.norm() > 1e-12 {
            let span = self.span();
            let mut proj = Vector::zeros(dim);
            for b in &span {
                proj += b * b.dot(&c);
            }
            let proj = proj.normalize();
            if units.iter().all(|u| u.dot(&proj) > 1e-9) {
                return Some(proj);
            }
        }
        None
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty() && self.pointed_axis().is_some()
    }

    /// Is `v` in the relative interior (all generator weights strictly positive)?
    pub fn contains_relint(&self, v: &Vector, tol: f64) -> bool {
        use minilp::{ComparisonOp, OptimizationDirection, Problem};
        let dim = v.len();
        let mut p = Problem::new(OptimizationDirection::Maximize);
        let s = p.add_var(1.0, (f64::NEG_INFINITY, 1.0));
        let lam: Vec<_> = self.generators.iter().map(|_| p.add_var(0.0, (0.0, f64::INFINITY))).collect();
        let mu: Vec<_> = self.lineality.iter().map(|_| p.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY))).collect();
        for &l in &lam {
            p.add_constraint(&[(l, 1.0), (s, -1.0)], ComparisonOp::Ge, 0.0);
        }
        for k in 0..dim {
            let mut expr: Vec<(minilp::Variable, f64)> = Vec::new();
            for (g, &l) in self.generators.iter().zip(&lam) {
                expr.push((l, g[k]));
            }
            for (g, &m) in self.lineality.iter().zip(&mu) {
                expr.push((m, g[k]));
            }
            p.add_constraint(expr, ComparisonOp::Eq, v[k]);
        }
        match p.solve() {
            Ok(sol) => self.generators.is_empty() || sol[s] > tol,
            Err(_) => false,
        }
    }

    /// Normalized solid angle of the cone (lineality ignored) within its span.
    ///
    /// Exact for span dimension ≤ 3, Gaussian Monte Carlo otherwise. `key`
    /// selects the random stream so distinct cones get independent samples.
    pub fn angle(&self, budget: &AngleBudget, key: u64) -> Result<Angle> {
        let span = self.span();
        let s = span.len();
        let frame = Frame { origin: Vector::zeros(self.ambient_dim()), basis: span };
        let gens: Vec<Vector> = self.generators.iter().map(|g| frame.direction_to_local(g).normalize()).collect();
        match s {
            0 => Ok(Angle::exact(1.0)),
            1 => {
                let pos = gens.iter().any(|g| g[0] > 0.0);
                let neg = gens.iter().any(|g| g[0] < 0.0);
                if pos && neg {
                    Err(Error::GeneralPosition("cone contains a line".into()))
                } else {
                    Ok(Angle::exact(0.5))
                }
            }
            2 => planar_angle(&gens).map(|a| Angle::exact(a / (2.0 * PI))),
            3 => solid_angle_3d(&gens).map(|a| Angle::exact(a / (4.0 * PI))),
            _ => monte_carlo_angle(&gens, s, budget, key),
        }
    }
}

/// Opening angle of a pointed planar cone: 2π minus the largest circular gap.
fn planar_angle(gens: &[Vector]) -> Result<f64> {
    let mut th: Vec<f64> = gens.iter().map(|g| g[1].atan2(g[0])).collect();
    th.sort_by(f64::total_cmp);
    let n = th.len();
    let mut gap = th[0] + 2.0 * PI - th[n - 1];
    for i in 1..n {
        gap = gap.max(th[i] - th[i - 1]);
    }
    if gap <= PI + 1e-12 {
        return Err(Error::GeneralPosition("planar cone is not pointed".into()));
    }
    Ok(2.0 * PI - gap)
}

/// Cross-section of a pointed cone at height one along its axis, as
/// coordinates in the orthogonal complement of the axis.
fn cross_section(gens: &[Vector], s: usize) -> Result<(Vector, Vec<Vector>, Vec<Vector>)> {
    let cone = Cone::new(gens.to_vec());
    let c = cone.pointed_axis().ok_or_else(|| Error::GeneralPosition("cone is not pointed".into()))?;
    let perp = crate::linalg::complement_basis(std::slice::from_ref(&c), s);
    let section: Vec<Vector> = gens
        .iter()
        .map(|g| {
            let h = g / g.dot(&c);
            Vector::from_iterator(s - 1, perp.iter().map(|b| b.dot(&h)))
        })
        .collect();
    Ok((c, perp, section))
}

/// Solid angle (steradians) of a pointed cone in R³ with unit generators.
fn solid_angle_3d(gens: &[Vector]) -> Result<f64> {
    let (c, perp, section) = cross_section(gens, 3)?;
    let h = hull::hull(&section)?;
    let rays: Vec<Vector> = h
        .vertices
        .iter()
        .map(|q| (&c + &perp[0] * q[0] + &perp[1] * q[1]).normalize())
        .collect();
    let mut omega = 0.0;
    for i in 1..rays.len() - 1 {
        omega += triangle_solid_angle(&rays[0], &rays[i], &rays[i + 1]);
    }
    Ok(omega)
}

/// Solid angle of the cone over a spherical triangle (unit vertices).
pub(crate) fn triangle_solid_angle(a: &Vector, b: &Vector, c: &Vector) -> f64 {
    let triple = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
    let denom = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    2.0 * triple.abs().atan2(denom)
}

fn monte_carlo_angle(gens: &[Vector], s: usize, budget: &AngleBudget, key: u64) -> Result<Angle> {
    let (c, perp, section) = cross_section(gens, s)?;
    let h = hull::hull(&section)?;
    let mut r = rng::stream(rng::mix(budget.seed, key), 0);
    let mut hits = 0usize;
    let n = budget.samples.max(1);
    for _ in 0..n {
        let g = rng::gaussian_vector(&mut r, s);
        let t = g.dot(&c);
        if t <= 0.0 {
            continue;
        }
        let q = Vector::from_iterator(s - 1, perp.iter().map(|b| b.dot(&g) / t));
        if h.facets.iter().all(|f| f.normal.dot(&q) <= f.offset) {
            hits += 1;
        }
    }
    let p = hits as f64 / n as f64;
    Ok(Angle { value: p, stderr: (p * (1.0 - p) / n as f64).sqrt(), method: AngleMethod::MonteCarlo })
}
