//! Body generators and invariant checks shared by the integration suites.
#![allow(dead_code)]

use kinemalab_core::content::{covering_number, estimate_content, content_curve, eps_grid, sigma_set, tk_set, PointCloud};
use kinemalab_core::curvature::{curvature_measure, external_angle, internal_angle, intrinsic_volumes, intrinsic_volumes_polyconvex, Region};
use kinemalab_core::dc::{aura_polytope, clarke_exact, clarke_superset, nor_eps, refinement_cells, DCFunction};
use kinemalab_core::geom::{difference_body, euler_polyconvex, intersect, minkowski_sum, random_rotation, AngleBudget};
use kinemalab_core::linalg::vector;
use kinemalab_core::rng::{self, gaussian_vector, unit_vector, Rng};
use kinemalab_core::{AxisBox, HPolytope, Polyconvex, RigidMotion, Vector};

pub type Check = Result<(), String>;

pub fn ok<T>(r: kinemalab_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

pub fn random_motion(r: &mut Rng, d: usize, spread: f64) -> RigidMotion {
    RigidMotion::new(random_rotation(r, d), gaussian_vector(r, d) * spread).unwrap()
}

pub fn random_box(r: &mut Rng, d: usize) -> AxisBox {
    use rand::Rng as _;
    let lo: Vec<f64> = (0..d).map(|_| r.random_range(-1.0..0.5)).collect();
    let hi: Vec<f64> = lo.iter().map(|l| l + r.random_range(0.3..1.5)).collect();
    AxisBox::new(lo, hi).unwrap()
}

pub fn directions(r: &mut Rng, d: usize, n: usize) -> Vec<Vector> {
    (0..n).map(|_| unit_vector(r, d)).collect()
}

// ---- convex geometry ----

pub fn support_additivity(k: &HPolytope, l: &HPolytope, dirs: &[Vector]) -> Check {
    let s = ok(minkowski_sum(k, l))?;
    for u in dirs {
        let (lhs, rhs) = (s.support(u), k.support(u) + l.support(u));
        ensure(close(lhs, rhs, 1e-9), || format!("h_(K+L) = {lhs}, h_K + h_L = {rhs} at {u:?}"))?;
    }
    Ok(())
}

fn vertices_inside(inner: &HPolytope, outer: &HPolytope) -> bool {
    inner.vertices().iter().all(|v| outer.contains(v))
}

pub fn cap_nesting(k: &HPolytope, n: &Vector, t1: f64, t2: f64) -> Check {
    let (s, t) = (t1.min(t2), t1.max(t2));
    let small = ok(k.cap(n, s))?;
    let large = ok(k.cap(n, t))?;
    ensure(vertices_inside(&small, &large), || format!("cap({s}) not inside cap({t})"))
}

/// `C(K,n,s) + C(L,n,t) ⊆ C(K+L,n,s+t)`.
pub fn cap_sum_inclusion(k: &HPolytope, l: &HPolytope, n: &Vector, s: f64, t: f64) -> Check {
    let sum = ok(minkowski_sum(&ok(k.cap(n, s))?, &ok(l.cap(n, t))?))?;
    let cap = ok(ok(minkowski_sum(k, l))?.cap(n, s + t))?;
    ensure(vertices_inside(&sum, &cap), || "sum of caps leaves the cap of the sum".into())
}

/// Equality of the cap sum for `L = λK + v` with depths in ratio `λ`.
pub fn cap_sum_homothetic(k: &HPolytope, lambda: f64, shift: &Vector, n: &Vector, s: f64) -> Check {
    let l = HPolytope::from_vertices(k.dim(), &k.vertices().iter().map(|v| v * lambda + shift).collect::<Vec<_>>()).unwrap();
    let sum = ok(minkowski_sum(&ok(k.cap(n, s))?, &ok(l.cap(n, lambda * s))?))?;
    let cap = ok(ok(minkowski_sum(k, &l))?.cap(n, s + lambda * s))?;
    ensure(vertices_inside(&sum, &cap) && vertices_inside(&cap, &sum), || "homothetic cap sum differs from cap of sum".into())?;
    ensure(close(sum.volume(), cap.volume(), 1e-8), || format!("volumes {} vs {}", sum.volume(), cap.volume()))
}

/// `Δ(U − V)` and `Δ(U + V)` have the same support function.
pub fn difference_bodies(u: &HPolytope, v: &HPolytope, dirs: &[Vector]) -> Check {
    let a = ok(difference_body(&ok(minkowski_sum(u, &v.negated()))?))?;
    let b = ok(difference_body(&ok(minkowski_sum(u, v))?))?;
    for w in dirs {
        ensure(close(a.support(w), b.support(w), 1e-9), || format!("supports {} vs {}", a.support(w), b.support(w)))?;
    }
    Ok(())
}

/// A generic direction lies in the relative interior of exactly one vertex
/// normal cone.
pub fn normal_cone_tiling(k: &HPolytope, dirs: &[Vector]) -> Check {
    let faces = ok(k.faces())?;
    let cones: Vec<_> = faces.of_dim(0).map(|f| k.normal_cone(f)).collect();
    for u in dirs {
        let hits = cones.iter().filter(|c| c.contains_relint(u, 1e-12)).count();
        ensure(hits == 1, || format!("direction {u:?} in {hits} vertex cones"))?;
    }
    Ok(())
}

/// Adding a piece contained in another leaves the Euler characteristic alone.
pub fn euler_redundant(pieces: &[HPolytope], inner: &HPolytope) -> Check {
    let base = ok(euler_polyconvex(&ok(Polyconvex::new(pieces.to_vec()))?))?;
    let mut more = pieces.to_vec();
    more.push(inner.clone());
    let extra = ok(euler_polyconvex(&ok(Polyconvex::new(more))?))?;
    ensure(base == extra, || format!("χ changed from {base} to {extra}"))
}

/// Boundary normals of `K + B¹` over a cap of depth `t` stay within
/// spherical distance `2√(3t)` of the cap direction. Boundary points are
/// `x = v + u` with `u` a unit normal and `v` the vertex of `K` it exposes.
pub fn cap_diameter(k: &HPolytope, nu: &Vector, t: f64, samples: usize, seed: u64) -> Check {
    let d = k.dim();
    let h = k.support(nu) + 1.0;
    let bound = 2.0 * (3.0 * t).sqrt();
    let mut r = rng::stream(seed, 0);
    let mut inside = 0;
    for i in 0..samples {
        let sigma = [0.05, 0.2, 1.0][i % 3];
        let u = (nu + gaussian_vector(&mut r, d) * sigma).normalize();
        let v = k.vertices().iter().max_by(|a, b| a.dot(&u).total_cmp(&b.dot(&u))).unwrap();
        let x = v + &u;
        if x.dot(nu) >= h - t {
            inside += 1;
            let angle = u.dot(nu).clamp(-1.0, 1.0).acos();
            ensure(angle <= bound, || format!("normal at angle {angle} > {bound} in cap of depth {t}"))?;
        }
    }
    ensure(inside > 0, || "no sampled boundary point in the cap".into())
}

// ---- curvature ----

pub fn motion_invariance(p: &HPolytope, g: &RigidMotion) -> Check {
    let a = ok(intrinsic_volumes(p))?;
    let b = ok(intrinsic_volumes(&p.transformed(g)))?;
    for (k, (x, y)) in a.values.iter().zip(&b.values).enumerate() {
        ensure(close(*x, *y, 1e-9), || format!("V_{k}: {x} vs {y}"))?;
    }
    Ok(())
}

/// `V(A ∪ B) + V(A ∩ B) = V(A) + V(B)` for overlapping boxes.
pub fn valuation(a: &AxisBox, b: &AxisBox) -> Check {
    let pa = HPolytope::from_box(a);
    let pb = HPolytope::from_box(b);
    let union = ok(intrinsic_volumes_polyconvex(&ok(Polyconvex::new(vec![pa.clone(), pb.clone()]))?))?;
    let va = ok(intrinsic_volumes(&pa))?;
    let vb = ok(intrinsic_volumes(&pb))?;
    let vi = match ok(intersect(&pa, &pb))? {
        Some(i) => ok(intrinsic_volumes(&i))?.values,
        None => vec![0.0; a.dim() + 1],
    };
    for k in 0..=a.dim() {
        let (lhs, rhs) = (union.values[k] + vi[k], va.values[k] + vb.values[k]);
        ensure(close(lhs, rhs, 1e-9), || format!("V_{k}: union+meet {lhs} vs sum {rhs}"))?;
    }
    Ok(())
}

/// `Φ_k(P, E) = Φ_k(P, E₁) + Φ_k(P, E₂)` for a box split by a generic cut.
pub fn split_additivity(p: &HPolytope, e: &AxisBox, axis: usize, frac: f64) -> Check {
    let cut = e.lo[axis] + frac * (e.hi[axis] - e.lo[axis]);
    let mut hi1 = e.hi.clone();
    hi1[axis] = cut;
    let mut lo2 = e.lo.clone();
    lo2[axis] = cut;
    let e1 = AxisBox::new(e.lo.clone(), hi1).unwrap();
    let e2 = AxisBox::new(lo2, e.hi.clone()).unwrap();
    for k in 0..=p.dim() {
        let whole = ok(curvature_measure(p, k, &Region::from_box(e)))?;
        let parts = ok(curvature_measure(p, k, &Region::from_box(&e1)))? + ok(curvature_measure(p, k, &Region::from_box(&e2)))?;
        ensure(close(whole, parts, 1e-9), || format!("Φ_{k}: {whole} vs {parts}"))?;
    }
    Ok(())
}

pub fn vertex_angles_sum_to_one(p: &HPolytope) -> Check {
    let budget = AngleBudget::default();
    let faces = ok(p.faces())?;
    let mut s = 0.0;
    for f in faces.of_dim(0) {
        s += ok(external_angle(p, f, &budget))?.gamma;
    }
    ensure((s - 1.0).abs() <= 1e-9, || format!("vertex external angles sum to {s}"))
}

/// `Σ_F (−1)^{dim F} β(F, P) = 0` over all faces including `P`.
pub fn gram_relation(p: &HPolytope) -> Check {
    let budget = AngleBudget::default();
    let faces = ok(p.faces())?;
    let mut s = 0.0;
    for f in &faces.faces {
        let b = ok(internal_angle(p, f, &budget))?.value;
        s += if f.dim % 2 == 0 { b } else { -b };
    }
    ensure(s.abs() <= 1e-9, || format!("Gram sum {s}"))
}

// ---- DC functions ----

pub fn clarke_sandwich(f: &DCFunction, points: &[Vector]) -> Check {
    for x in points {
        let exact = match clarke_exact(f, x) {
            Ok(h) => h,
            Err(kinemalab_core::Error::ToleranceAmbiguity(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        ensure(clarke_superset(f, x).contains_hull(&exact, 1e-9), || format!("Clarke hull at {x:?} escapes the superset"))?;
    }
    Ok(())
}

/// Vertices of the refinement complex, where Clarke hulls are largest.
pub fn complex_vertices(f: &DCFunction, window: &AxisBox) -> Result<Vec<Vector>, String> {
    let mut out: Vec<Vector> = Vec::new();
    for c in ok(refinement_cells(f, window))? {
        for v in c.polytope.vertices() {
            if !out.iter().any(|w| (w - v).amax() < 1e-9) {
                out.push(v.clone());
            }
        }
    }
    Ok(out)
}

/// `f ≥ 0` everywhere and `f = 0` exactly on `P`.
pub fn aura_soundness(p: &HPolytope, points: &[Vector]) -> Check {
    let f = ok(aura_polytope(p))?;
    for x in points {
        let v = f.eval(x);
        ensure(v >= -1e-12, || format!("aura negative at {x:?}: {v}"))?;
        let zero = v.abs() <= 1e-9;
        ensure(zero == p.contains(x), || format!("aura zero set disagrees with P at {x:?} (f = {v})"))?;
    }
    Ok(())
}

/// Points of `nor_ε₂ f` lie in `nor_ε₁ f` for `ε₁ ≤ ε₂`.
pub fn nor_eps_antitone(f: &DCFunction, e1: f64, e2: f64, window: &AxisBox, samples: usize, seed: u64) -> Check {
    let d = f.dim();
    let small = ok(nor_eps(f, e1.min(e2), window))?;
    let big = ok(kinemalab_core::content::nor_eps_set(f, e1.max(e2), window))?;
    for z in ok(big.sample(samples, seed))? {
        let x = z.rows(0, d).into_owned();
        let u = z.rows(d, d).into_owned();
        ensure(small.contains(&x, &u), || format!("({x:?}, {u:?}) lost at the smaller ε"))?;
    }
    Ok(())
}

/// `f ∘ γ⁻¹` evaluated at `γx` reproduces `f(x)`, and matches the aura of `γP`.
pub fn motion_equivariance(p: &HPolytope, g: &RigidMotion, points: &[Vector]) -> Check {
    let f = ok(aura_polytope(p))?;
    let moved = ok(DCFunction::new(f.g.compose_inverse(g), f.h.compose_inverse(g)))?;
    let direct = ok(aura_polytope(&p.transformed(g)))?;
    for x in points {
        let y = g.apply(x);
        ensure(close(moved.eval(&y), f.eval(x), 1e-9), || format!("composed aura {} vs {}", moved.eval(&y), f.eval(x)))?;
        ensure(close(direct.eval(&y), f.eval(x), 1e-9), || format!("aura of moved body {} vs {}", direct.eval(&y), f.eval(x)))?;
    }
    Ok(())
}

// ---- content ----

/// `cover(ε) ≤ pack(ε/2)`, `pack(ε) ≤ cover(ε)` and `lo ≤ hi` per scale.
pub fn bracket_inequalities(points: &[Vector], m: usize) -> Check {
    let cloud = PointCloud::new(points[0].len(), points);
    let grid = eps_grid(cloud.diameter_bound(), 5);
    for &e in &grid {
        let (cover, pack) = covering_number(&cloud, e);
        let (_, pack_half) = covering_number(&cloud, e / 2.0);
        ensure(pack <= cover, || format!("pack {pack} > cover {cover} at ε={e}"))?;
        ensure(cover <= pack_half, || format!("cover {cover} > pack(ε/2) {pack_half} at ε={e}"))?;
    }
    let est = ok(estimate_content(&content_curve(&cloud, &grid), m))?;
    for s in &est.scales {
        ensure(s.content_lo <= s.content_hi, || format!("bracket [{}, {}] inverted at ε={}", s.content_lo, s.content_hi, s.eps))?;
    }
    Ok(())
}

/// `Σ_{A,B} ⊆ Σ_{A+P,B+P}` on sampled points.
pub fn sigma_monotone(a: &HPolytope, b: &HPolytope, p: &HPolytope, samples: usize, seed: u64) -> Check {
    let small = ok(sigma_set(a, b))?;
    let big = ok(sigma_set(&ok(minkowski_sum(a, p))?, &ok(minkowski_sum(b, p))?))?;
    for z in ok(small.sample(samples, seed))? {
        ensure(big.contains(&z), || format!("{z:?} not in the enlarged Σ"))?;
    }
    Ok(())
}

/// The slab map `(p, u) ↦ ((p+z)/|p+z|, (|z|²u − (u·p)z)/|·|)` from `Σ_{B,A}`
/// of the unit-cube sections at heights `h` and `h'` into `T_K`, checked for
/// membership and for the Lipschitz bound `1 + (2 + P)/|z|`.
pub fn slab_map(h: f64, h2: f64, samples: usize, seed: u64) -> Check {
    let sq = HPolytope::cube(2, 0.0, 1.0);
    let z = vector(&[0.0, 0.0, h2 - h]);
    let zn = z.norm();
    let sigma = ok(sigma_set(&sq, &sq))?;
    let tk = ok(tk_set(&HPolytope::cube(3, 0.0, 1.0)))?;
    let lift = |q: &Vector| vector(&[q[0], q[1], 0.0]);
    let map = |s: &Vector| -> Vector {
        let p = lift(&s.rows(0, 2).into_owned());
        let u = lift(&s.rows(2, 2).into_owned());
        let v = (&p + &z).normalize();
        let w = (&u * (zn * zn) - &z * u.dot(&p)).normalize();
        Vector::from_iterator(6, v.iter().chain(w.iter()).copied())
    };
    let pts = ok(sigma.sample(samples, seed))?;
    let reach = pts.iter().map(|s| s.rows(0, 2).norm()).fold(0.0, f64::max);
    let lip = 1.0 + (2.0 + reach) / zn;
    let images: Vec<Vector> = pts.iter().map(map).collect();
    for (s, t) in pts.iter().zip(&images) {
        ensure(tk.contains(t), || format!("image {t:?} of {s:?} not in T_K"))?;
    }
    for i in 0..pts.len() {
        let j = (i * 7919 + 13) % pts.len();
        let dx = (&pts[i] - &pts[j]).norm();
        if dx > 0.0 {
            let ratio = (&images[i] - &images[j]).norm() / dx;
            ensure(ratio <= lip, || format!("slab map stretch {ratio} > {lip}"))?;
        }
    }
    Ok(())
}
