//! Allocation-light convex polygon routines for the planar Monte-Carlo loops.

use std::f64::consts::PI;

use super::{HPolytope, Halfspace};

pub type P2 = [f64; 2];

/// `{x : a·x ≤ b}`.
#[derive(Clone, Copy, Debug)]
pub struct Halfplane {
    pub a: P2,
    pub b: f64,
}

impl Halfplane {
    pub fn eval(&self, p: P2) -> f64 {
        self.a[0] * p[0] + self.a[1] * p[1] - self.b
    }

    pub fn from_halfspace(h: &Halfspace) -> Halfplane {
        Halfplane { a: [h.normal[0], h.normal[1]], b: h.offset }
    }
}

/// Counter-clockwise vertex list of a full-dimensional planar polytope.
pub fn ccw_vertices(p: &HPolytope) -> Vec<P2> {
    assert_eq!(p.dim(), 2);
    let c = p.centroid();
    let mut vs: Vec<P2> = p.vertices().iter().map(|v| [v[0], v[1]]).collect();
    vs.sort_by(|a, b| (a[1] - c[1]).atan2(a[0] - c[0]).total_cmp(&(b[1] - c[1]).atan2(b[0] - c[0])));
    vs
}

pub fn edge_halfplanes(poly: &[P2]) -> Vec<Halfplane> {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let p = poly[i];
            let q = poly[(i + 1) % n];
            let e = [q[0] - p[0], q[1] - p[1]];
            let len = (e[0] * e[0] + e[1] * e[1]).sqrt();
            let a = [e[1] / len, -e[0] / len];
            Halfplane { a, b: a[0] * p[0] + a[1] * p[1] }
        })
        .collect()
}

/// Sutherland–Hodgman clip of a convex polygon to one halfplane.
pub fn clip(poly: &[P2], h: &Halfplane, out: &mut Vec<P2>) {
    out.clear();
    let n = poly.len();
    if n == 0 {
        return;
    }
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let sp = h.eval(p);
        let sq = h.eval(q);
        if sp <= 0.0 {
            out.push(p);
        }
        if (sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0) {
            let t = sp / (sp - sq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
}

/// Clips by all halfplanes, then removes near-duplicate consecutive points.
pub fn clip_all(poly: &[P2], hs: &[Halfplane], buf: &mut Vec<P2>) -> Vec<P2> {
    let mut cur = poly.to_vec();
    for h in hs {
        clip(&cur, h, buf);
        std::mem::swap(&mut cur, buf);
        if cur.is_empty() {
            return cur;
        }
    }
    clean(&mut cur);
    cur
}

fn clean(poly: &mut Vec<P2>) {
    let tol = 1e-12;
    let mut out: Vec<P2> = Vec::with_capacity(poly.len());
    for p in poly.iter() {
        if out.last().is_none_or(|q: &P2| (p[0] - q[0]).abs() > tol || (p[1] - q[1]).abs() > tol) {
            out.push(*p);
        }
    }
    while out.len() > 1 {
        let f = out[0];
        let l = out[out.len() - 1];
        if (f[0] - l[0]).abs() <= tol && (f[1] - l[1]).abs() <= tol {
            out.pop();
        } else {
            break;
        }
    }
    *poly = out;
}

pub fn area(poly: &[P2]) -> f64 {
    let n = poly.len();
    let mut a = 0.0;
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        a += p[0] * q[1] - p[1] * q[0];
    }
    0.5 * a
}

/// Length of the part of segment `pq` inside every halfplane.
pub fn clipped_length(p: P2, q: P2, hs: &[Halfplane]) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for h in hs {
        let sp = h.eval(p);
        let sq = h.eval(q);
        let d = sq - sp;
        if d.abs() < 1e-300 {
            if sp > 0.0 {
                return 0.0;
            }
            continue;
        }
        let t = -sp / d;
        if d > 0.0 {
            hi = hi.min(t);
        } else {
            lo = lo.max(t);
        }
        if lo >= hi {
            return 0.0;
        }
    }
    let dx = q[0] - p[0];
    let dy = q[1] - p[1];
    (hi - lo) * (dx * dx + dy * dy).sqrt()
}

pub fn inside(p: P2, hs: &[Halfplane]) -> bool {
    hs.iter().all(|h| h.eval(p) <= 0.0)
}

/// `(Φ_0, Φ_1, Φ_2)` of a convex polygon localized to a convex region.
///
/// The polygon is a closed CCW vertex loop; a two-point loop is a segment and
/// a one-point loop is a point, so lower-dimensional sets are handled by the
/// same exterior-angle bookkeeping.
pub fn curvature_measures(poly: &[P2], region: &[Halfplane], buf: &mut Vec<P2>) -> [f64; 3] {
    let n = poly.len();
    if n == 0 {
        return [0.0; 3];
    }
    if n == 1 {
        return [if inside(poly[0], region) { 1.0 } else { 0.0 }, 0.0, 0.0];
    }
    let mut phi0 = 0.0;
    let mut phi1 = 0.0;
    for i in 0..n {
        let prev = poly[(i + n - 1) % n];
        let p = poly[i];
        let next = poly[(i + 1) % n];
        if inside(p, region) {
            let e1 = [p[0] - prev[0], p[1] - prev[1]];
            let e2 = [next[0] - p[0], next[1] - p[1]];
            let turn = (e1[0] * e2[1] - e1[1] * e2[0]).atan2(e1[0] * e2[0] + e1[1] * e2[1]);
            let turn = if n == 2 { PI } else { turn };
            phi0 += turn / (2.0 * PI);
        }
        phi1 += 0.5 * clipped_length(p, next, region);
    }
    let phi2 = if n >= 3 {
        let clipped = clip_all(poly, region, buf);
        if clipped.len() >= 3 {
            area(&clipped)
        } else {
            0.0
        }
    } else {
        0.0
    };
    [phi0, phi1, phi2]
}
