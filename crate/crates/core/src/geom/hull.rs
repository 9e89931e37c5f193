//! Convex hulls of point sets that are full-dimensional in their own
//! coordinates (callers project to an affine frame first).

use crate::error::{Error, Result};
use crate::linalg::{complement_basis, for_each_combination, span_basis, Frame, Vector};

use super::TAU;

/// Slack band inside which a vertex/facet incidence is considered ambiguous.
const AMBIGUOUS: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct LocalFacet {
    pub normal: Vector,
    pub offset: f64,
    /// Indices into [`LocalHull::vertices`].
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct LocalHull {
    pub vertices: Vec<Vector>,
    pub facets: Vec<LocalFacet>,
}

pub fn coordinate_scale(points: &[Vector]) -> f64 {
    points.iter().flat_map(|p| p.iter()).fold(1.0f64, |m, x| m.max(x.abs()))
}

/// Removes points closer than the tolerance to an earlier point.
pub fn dedup_points(points: &[Vector], scale: f64) -> Vec<Vector> {
    let tol = 1e2 * TAU * scale;
    let mut out: Vec<Vector> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| (q - p).amax() <= tol) {
            out.push(p.clone());
        }
    }
    out
}

/// Hull of points that affinely span `R^m`, `m = points[0].len()`.
pub fn hull(points: &[Vector]) -> Result<LocalHull> {
    let m = points.first().map(|p| p.len()).ok_or(Error::Empty)?;
    let scale = coordinate_scale(points);
    let pts = dedup_points(points, scale);
    match m {
        0 => Ok(LocalHull { vertices: vec![pts[0].clone()], facets: Vec::new() }),
        1 => {
            let (lo, hi) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p[0]), b.max(p[0])));
            if hi - lo <= TAU * scale {
                return Err(Error::Degenerate { expected: 1, found: 0 });
            }
            Ok(LocalHull {
                vertices: vec![Vector::from_element(1, lo), Vector::from_element(1, hi)],
                facets: vec![
                    LocalFacet { normal: Vector::from_element(1, -1.0), offset: -lo, vertices: vec![0] },
                    LocalFacet { normal: Vector::from_element(1, 1.0), offset: hi, vertices: vec![1] },
                ],
            })
        }
        2 => hull_2d(&pts, scale),
        _ if pts.len() > REFINE_ABOVE * m => hull_refined(&pts, m, scale),
        _ => hull_brute(&pts, m, scale),
    }
}

/// Point counts (per dimension) above which the hull is grown from extreme
/// points instead of enumerating all `m`-subsets.
const REFINE_ABOVE: usize = 8;

/// Hull of a seed set of extreme points, grown by adding for every facet the
/// farthest point outside it until no point is left outside.
fn hull_refined(pts: &[Vector], m: usize, scale: f64) -> Result<LocalHull> {
    let tol = TAU * scale;
    let mut r = crate::rng::stream(0x4855_4c4c, 0);
    let mut dirs: Vec<Vector> = (0..m).flat_map(|i| [crate::linalg::unit(m, i), -crate::linalg::unit(m, i)]).collect();
    dirs.extend((0..16 * m).map(|_| crate::rng::unit_vector(&mut r, m)));
    let mut seed: Vec<usize> = dirs
        .iter()
        .map(|u| (0..pts.len()).max_by(|&a, &b| pts[a].dot(u).total_cmp(&pts[b].dot(u))).unwrap())
        .collect();
    seed.sort_unstable();
    seed.dedup();
    loop {
        let subset: Vec<Vector> = seed.iter().map(|&i| pts[i].clone()).collect();
        let h = match hull_brute(&subset, m, scale) {
            Ok(h) => h,
            Err(Error::Degenerate { .. }) if seed.len() < pts.len() => {
                return hull_brute(pts, m, scale);
            }
            Err(e) => return Err(e),
        };
        let mut added = false;
        for f in &h.facets {
            let (best, slack) =
                (0..pts.len()).map(|i| (i, f.normal.dot(&pts[i]) - f.offset)).max_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
            if slack > tol {
                if let Err(at) = seed.binary_search(&best) {
                    seed.insert(at, best);
                    added = true;
                }
            }
        }
        if !added {
            check_ambiguity(&h.vertices, &h.facets, pts, scale)?;
            return Ok(h);
        }
    }
}

fn cross(o: &Vector, a: &Vector, b: &Vector) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counter-clockwise polygon by Andrew's monotone chain.
fn hull_2d(pts: &[Vector], scale: f64) -> Result<LocalHull> {
    let mut sorted: Vec<&Vector> = pts.iter().collect();
    sorted.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let tol = TAU * scale;
    let keep_turn = |o: &Vector, a: &Vector, b: &Vector| {
        let len = (a - o).norm().max(1e-300);
        cross(o, a, b) / len > tol
    };
    let mut chain: Vec<&Vector> = Vec::with_capacity(2 * sorted.len());
    for p in sorted.iter() {
        while chain.len() >= 2 && !keep_turn(chain[chain.len() - 2], chain[chain.len() - 1], p) {
            chain.pop();
        }
        chain.push(p);
    }
    let lower_len = chain.len() + 1;
    for p in sorted.iter().rev().skip(1) {
        while chain.len() >= lower_len && !keep_turn(chain[chain.len() - 2], chain[chain.len() - 1], p) {
            chain.pop();
        }
        chain.push(p);
    }
    chain.pop();
    if chain.len() < 3 {
        return Err(Error::Degenerate { expected: 2, found: 1 });
    }
    let vertices: Vec<Vector> = chain.into_iter().cloned().collect();
    let n = vertices.len();
    let mut facets = Vec::with_capacity(n);
    for i in 0..n {
        let a = &vertices[i];
        let b = &vertices[(i + 1) % n];
        let e = b - a;
        let normal = Vector::from_vec(vec![e[1], -e[0]]) / e.norm();
        let offset = normal.dot(a);
        facets.push(LocalFacet { normal, offset, vertices: vec![i, (i + 1) % n] });
    }
    check_ambiguity(&vertices, &facets, pts, scale)?;
    Ok(LocalHull { vertices, facets })
}

fn hull_brute(pts: &[Vector], m: usize, scale: f64) -> Result<LocalHull> {
    let n = pts.len();
    let tol = TAU * scale;
    let mut raw: Vec<(Vector, f64, Vec<usize>)> = Vec::new();
    for_each_combination(n, m, |subset| {
        if raw.iter().any(|(_, _, inc)| subset.iter().all(|i| inc.contains(i))) {
            return;
        }
        let diffs: Vec<Vector> = subset[1..].iter().map(|&i| &pts[i] - &pts[subset[0]]).collect();
        let span = span_basis(&diffs, 1e-10);
        if span.len() != m - 1 {
            return;
        }
        let mut normal = complement_basis(&span, m).remove(0);
        let mut offset = normal.dot(&pts[subset[0]]);
        let slacks: Vec<f64> = pts.iter().map(|p| normal.dot(p) - offset).collect();
        let above = slacks.iter().any(|s| *s > tol);
        let below = slacks.iter().any(|s| *s < -tol);
        if above && below {
            return;
        }
        if above {
            normal = -normal;
            offset = -offset;
        }
        let inc: Vec<usize> = (0..n).filter(|&i| slacks[i].abs() <= tol).collect();
        raw.push((normal, offset, inc));
    });
    if raw.len() < m + 1 {
        return Err(Error::Degenerate { expected: m, found: m - 1 });
    }
    // A point is a vertex iff the normals of its facets have full rank.
    let is_vertex: Vec<bool> = (0..n)
        .map(|i| {
            let normals: Vec<Vector> = raw.iter().filter(|f| f.2.contains(&i)).map(|f| f.0.clone()).collect();
            span_basis(&normals, 1e-10).len() == m
        })
        .collect();
    let mut index = vec![usize::MAX; n];
    let mut vertices = Vec::new();
    for i in 0..n {
        if is_vertex[i] {
            index[i] = vertices.len();
            vertices.push(pts[i].clone());
        }
    }
    let facets: Vec<LocalFacet> = raw
        .into_iter()
        .map(|(normal, offset, inc)| LocalFacet {
            normal,
            offset,
            vertices: inc.into_iter().filter(|&i| is_vertex[i]).map(|i| index[i]).collect(),
        })
        .collect();
    check_ambiguity(&vertices, &facets, pts, scale)?;
    Ok(LocalHull { vertices, facets })
}

fn check_ambiguity(vertices: &[Vector], facets: &[LocalFacet], all: &[Vector], scale: f64) -> Result<()> {
    for f in facets {
        for (i, v) in vertices.iter().enumerate() {
            let s = f.offset - f.normal.dot(v);
            if s > TAU * scale && s < AMBIGUOUS * scale && !f.vertices.contains(&i) {
                return Err(Error::ToleranceAmbiguity(format!("vertex at slack {s:.3e} from a facet")));
            }
        }
        for p in all {
            if f.normal.dot(p) - f.offset > 1e3 * TAU * scale {
                return Err(Error::ToleranceAmbiguity("point outside computed hull".into()));
            }
        }
    }
    Ok(())
}

/// `m`-volume of the hull of points spanning `R^m` (0 for degenerate input).
pub fn volume(points: &[Vector]) -> f64 {
    let m = points[0].len();
    match m {
        0 => 1.0,
        1 => {
            let (lo, hi) = points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p[0]), b.max(p[0])));
            hi - lo
        }
        _ => match hull(points) {
            Ok(h) => hull_volume(&h),
            Err(_) => 0.0,
        },
    }
}

pub fn hull_volume(h: &LocalHull) -> f64 {
    let m = h.vertices[0].len();
    match m {
        0 => 1.0,
        1 => h.vertices[1][0] - h.vertices[0][0],
        2 => polygon_area(&h.vertices),
        _ => {
            let c = crate::linalg::centroid(&h.vertices);
            let mut total = 0.0;
            for f in &h.facets {
                let height = f.offset - f.normal.dot(&c);
                let fv: Vec<Vector> = f.vertices.iter().map(|&i| h.vertices[i].clone()).collect();
                let frame = Frame::of_points(&fv, 1e-10);
                if frame.dim() != m - 1 {
                    continue;
                }
                let local: Vec<Vector> = fv.iter().map(|v| frame.to_local(v)).collect();
                total += height * volume(&local) / m as f64;
            }
            total
        }
    }
}

/// Shoelace area of a counter-clockwise polygon.
pub fn polygon_area(vs: &[Vector]) -> f64 {
    let n = vs.len();
    let mut a = 0.0;
    for i in 0..n {
        let p = &vs[i];
        let q = &vs[(i + 1) % n];
        a += p[0] * q[1] - p[1] * q[0];
    }
    0.5 * a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    #[test]
    fn refined_hull_matches_enumeration() {
        let mut r = crate::rng::stream(5, 0);
        let mut pts: Vec<Vector> = (0..60).map(|_| crate::rng::gaussian_vector(&mut r, 3)).collect();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                pts.push(vector(&[x * 4.0, y * 4.0, 3.0]));
                pts.push(vector(&[x * 4.0, 2.0, 3.0]));
            }
        }
        let fast = hull_refined(&pts, 3, coordinate_scale(&pts)).unwrap();
        let slow = hull_brute(&pts, 3, coordinate_scale(&pts)).unwrap();
        let key = |h: &LocalHull| {
            let mut v: Vec<Vec<u64>> = h.vertices.iter().map(|p| p.iter().map(|x| x.to_bits()).collect()).collect();
            v.sort();
            v
        };
        assert_eq!(key(&fast), key(&slow));
        assert_eq!(fast.facets.len(), slow.facets.len());
        assert!((hull_volume(&fast) - hull_volume(&slow)).abs() < 1e-12);
    }

    #[test]
    fn square_with_interior_and_collinear_points() {
        let pts: Vec<Vector> = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5], [0.5, 0.0], [1.0, 0.5]]
            .iter()
            .map(|p| vector(p))
            .collect();
        let h = hull(&pts).unwrap();
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.facets.len(), 4);
        assert!((hull_volume(&h) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cube_facets_merge_coplanar_triangles() {
        let mut pts = Vec::new();
        for mask in 0..8 {
            pts.push(vector(&[(mask & 1) as f64, (mask >> 1 & 1) as f64, (mask >> 2 & 1) as f64]));
        }
        pts.push(vector(&[0.5, 0.5, 0.5]));
        let h = hull(&pts).unwrap();
        assert_eq!(h.vertices.len(), 8);
        assert_eq!(h.facets.len(), 6);
        assert!(h.facets.iter().all(|f| f.vertices.len() == 4));
        assert!((hull_volume(&h) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn simplex_volume_in_4d() {
        let mut pts = vec![Vector::zeros(4)];
        for i in 0..4 {
            pts.push(crate::linalg::unit(4, i));
        }
        assert!((volume(&pts) - 1.0 / 24.0).abs() < 1e-14);
    }

    #[test]
    fn degenerate_input_is_rejected() {
        let pts = vec![vector(&[0.0, 0.0]), vector(&[1.0, 1.0]), vector(&[2.0, 2.0])];
        assert!(matches!(hull(&pts), Err(Error::Degenerate { .. })));
    }
}
