//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use kinemalab_core::content::{graph_clarke_set, nor_eps_content, piece_content, sigma_set, tk_set, ContentEstimate, PointCloud};
use kinemalab_core::curvature::{steiner_volume, Region};
use kinemalab_core::dc::{aura_polytope, weak_regularity};
use kinemalab_core::geom::corpus::{random_hull, random_simplex};
use kinemalab_core::geom::AngleBudget;
use kinemalab_core::kinematic::{decompose, kinematic_constants, pkf_lhs_mc, verify_pkf, PkfProblem};
use kinemalab_core::linalg::vector;
use kinemalab_core::rng::{self, gaussian_vector};
use kinemalab_core::{AxisBox, Error, HPolytope, Polyconvex, RigidMotion};

type Outcome = Result<String, String>;

fn squares() -> (Polyconvex, Polyconvex) {
    (Polyconvex::single(HPolytope::cube(2, 0.0, 1.0)), Polyconvex::single(HPolytope::cube(2, 0.0, 0.5)))
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {:.1} s, limit {:.0} s", t.as_secs_f64(), limit.as_secs_f64()))
}

fn constants() -> Outcome {
    let start = Instant::now();
    let c2 = ok(kinematic_constants(2, 0))?;
    let c3 = ok(kinematic_constants(3, 0))?;
    let c11 = c2.get(1, 1).ok_or("missing c_{1,1}")?;
    let c12 = c3.get(1, 2).ok_or("missing c_{1,2}")?;
    let c21 = c3.get(2, 1).ok_or("missing c_{2,1}")?;
    ensure((c11 - 2.0 / PI).abs() <= 1e-9, || format!("c_11 = {c11}"))?;
    ensure((c12 - 0.5).abs() <= 1e-9 && (c21 - 0.5).abs() <= 1e-9, || format!("c_12 = {c12}, c_21 = {c21}"))?;
    let residual = c2.residual.max(c3.residual);
    ensure(residual <= 1e-9, || format!("template residual {residual:.2e}"))?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("c_11 = {c11:.12}, c_12 = {c12:.12}, c_21 = {c21:.12}, residual {residual:.1e}"))
}

fn global_pkf() -> Outcome {
    let start = Instant::now();
    let (a, b) = squares();
    let r = ok(verify_pkf(&PkfProblem::new(a, b, 0), 1_000_000, 2024))?;
    let exact = 1.25 + 4.0 / PI;
    ensure((r.rhs - exact).abs() <= 1e-9, || format!("rhs {} vs {exact}", r.rhs))?;
    ensure(r.pass, || format!("lhs {:.5} ± {:.5}, rhs {:.5}, z = {:.2}", r.lhs, r.stderr, r.rhs, r.z))?;
    within(Duration::from_secs(120), start)?;
    Ok(format!("lhs {:.5} ± {:.5}, rhs {:.5}, z = {:+.2}, resampled {}", r.lhs, r.stderr, r.rhs, r.z, r.resampled))
}

fn local_pkf() -> Outcome {
    let (a, b) = squares();
    let phi = vec![AxisBox::new(vec![-0.1, -0.1], vec![0.6, 0.7]).unwrap()];
    let psi = vec![AxisBox::new(vec![-0.1, -0.1], vec![0.3, 0.6]).unwrap()];
    let mut out = Vec::new();
    for j in 0..=1 {
        let p = PkfProblem::new(a.clone(), b.clone(), j).with_boxes(Some(phi.clone()), Some(psi.clone()));
        let r = ok(verify_pkf(&p, 1_000_000, 3000 + j as u64))?;
        ensure(r.pass, || format!("j={j}: lhs {:.5} ± {:.5}, rhs {:.5}, z = {:.2}", r.lhs, r.stderr, r.rhs, r.z))?;
        out.push(format!("j={j}: rhs {:.5}, z = {:+.2}", r.rhs, r.z));
    }
    Ok(out.join("; "))
}

/// Random generic pairs with `γ` chosen so that `γB` meets `A`.
fn decomposition_pairs(d: usize, wanted: usize, seed: u64) -> Result<(f64, usize), String> {
    let budget = AngleBudget::default();
    let mut worst: f64 = 0.0;
    let mut skipped = 0;
    let mut done = 0;
    let mut i = 0u64;
    while done < wanted {
        i += 1;
        ensure(i < 10 * wanted as u64, || "too many non-generic draws".into())?;
        let a = ok(random_hull(d, 4 + (i % 6) as usize, rng::mix(seed, 2 * i)))?;
        let b = ok(random_hull(d, 4 + (i % 5) as usize, rng::mix(seed, 2 * i + 1)))?;
        let mut r = rng::stream(seed, i);
        let g = random_motion(&mut r, d, 0.0);
        let shift = a.centroid() - g.apply(&b.centroid()) + gaussian_vector(&mut r, d) * 0.4;
        let g = RigidMotion::translation(shift).compose(&g);
        match decompose(&a, &b, &g, &Region::all(), &budget) {
            Ok(checks) => {
                worst = checks.iter().map(|c| c.residual).fold(worst, f64::max);
                done += 1;
            }
            Err(Error::GeneralPosition(_)) => skipped += 1,
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok((worst, skipped))
}

fn decomposition() -> Outcome {
    let start = Instant::now();
    let (w2, s2) = decomposition_pairs(2, 100, 41)?;
    let (w3, s3) = decomposition_pairs(3, 20, 43)?;
    ensure(w2 <= 1e-8 && w3 <= 1e-8, || format!("max residual d=2 {w2:.2e}, d=3 {w3:.2e}"))?;
    within(Duration::from_secs(60), start)?;
    Ok(format!("max residual d=2 {w2:.1e}, d=3 {w3:.1e} (non-generic draws skipped: {s2}, {s3})"))
}

fn steiner() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..50u64 {
        let d = if i < 25 { 2 } else { 3 };
        let p = ok(random_hull(d, 4 + (i % 8) as usize, 500 + i))?;
        for (k, eps) in [0.1, 0.5, 1.0].into_iter().enumerate() {
            let s = ok(steiner_volume(&p, eps, 40_000, rng::mix(600 + i, k as u64)))?;
            ensure(s.z().abs() <= 4.0, || format!("polytope {i}, ε={eps}: formula {} vs MC {} ± {}", s.formula, s.mc, s.stderr))?;
            worst = worst.max(s.z().abs());
        }
    }
    Ok(format!("50 polytopes × 3 radii, max |z| = {worst:.2}"))
}

fn regularity() -> Outcome {
    let sq = ok(aura_polytope(&HPolytope::cube(2, -1.0, 1.0)))?;
    let cube = ok(aura_polytope(&HPolytope::cube(3, -1.0, 1.0)))?;
    let e2 = ok(weak_regularity(&sq, 0.0, &AxisBox::cube(2, -2.0, 2.0), 0.5))?.eps0().ok_or("square aura not certified")?;
    let e3 = ok(weak_regularity(&cube, 0.0, &AxisBox::cube(3, -2.0, 2.0), 0.5))?.eps0().ok_or("cube aura not certified")?;
    ensure((e2 - 0.5f64.sqrt()).abs() <= 1e-9, || format!("square ε₀ = {e2}"))?;
    ensure((e3 - (1.0f64 / 3.0).sqrt()).abs() <= 1e-9, || format!("cube ε₀ = {e3}"))?;
    Ok(format!("ε₀ = {e2:.12} (square), {e3:.12} (cube)"))
}

fn near(e: &ContentEstimate, m: f64, what: &str) -> Result<(), String> {
    ensure((e.dimension - m).abs() <= 0.15, || format!("{what}: fitted dimension {:.3} ± {:.3}", e.dimension, e.dimension_stderr))
}

fn nor_eps_fits() -> Outcome {
    let sq = ok(aura_polytope(&HPolytope::cube(2, -1.0, 1.0)))?;
    let e = ok(nor_eps_content(&sq, 0.5, &AxisBox::cube(2, -2.0, 2.0), 20_000, 7))?;
    near(&e, 1.0, "square aura")?;
    let exact = 8.0 + 2.0 * PI;
    let hits = e.brackets_containing(exact);
    ensure(hits >= 4, || format!("only {hits} of {} brackets contain {exact:.4}", e.scales.len()))?;
    let cube = ok(aura_polytope(&HPolytope::cube(3, -1.0, 1.0)))?;
    let c = ok(nor_eps_content(&cube, 0.5, &AxisBox::cube(3, -2.0, 2.0), 100_000, 8))?;
    near(&c, 2.0, "cube aura")?;
    Ok(format!("square dim {:.3}, {hits}/6 brackets contain 8+2π; cube dim {:.3}", e.dimension, c.dimension))
}

fn sigma_fit() -> Outcome {
    let a = ok(random_hull(3, 8, 801))?;
    let b = ok(random_hull(3, 8, 802))?;
    let e = ok(piece_content(&ok(sigma_set(&a, &b))?, 100_000, 9, 6))?;
    near(&e, 2.0, "Σ_{A,B}")?;
    let ratio = e.proxy_ratio();
    ensure(ratio <= 4.0, || format!("proxy ratio {ratio:.2}"))?;
    Ok(format!("dim {:.3} (plain slope {:.3}), proxy ratio {ratio:.2}", e.dimension, e.slope))
}

fn tk_fits() -> Outcome {
    let cube = ok(piece_content(&ok(tk_set(&HPolytope::cube(3, 0.0, 1.0)))?, 50_000, 10, 6))?;
    let simplex = ok(piece_content(&ok(tk_set(&ok(random_simplex(3, 811))?))?, 50_000, 11, 6))?;
    near(&cube, 1.0, "cube")?;
    near(&simplex, 1.0, "simplex")?;
    let (rc, rs) = (cube.proxy_ratio(), simplex.proxy_ratio());
    ensure(rc <= 4.0 && rs <= 4.0, || format!("proxy ratios {rc:.2}, {rs:.2}"))?;
    Ok(format!("cube dim {:.3} (ratio {rc:.2}), simplex dim {:.3} (ratio {rs:.2})", cube.dimension, simplex.dimension))
}

fn graph_fit() -> Outcome {
    let f = ok(aura_polytope(&HPolytope::cube(2, -1.0, 1.0)))?;
    let e = ok(piece_content(&ok(graph_clarke_set(&f, &AxisBox::cube(2, -2.0, 2.0)))?, 50_000, 12, 6))?;
    near(&e, 2.0, "graph ∂f")?;
    Ok(format!("dim {:.3}, proxy ratio {:.2}", e.dimension, e.proxy_ratio()))
}

fn invariant_suites() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    let mut run = |c: Check| -> Result<(), String> {
        count += 1;
        c
    };
    for s in 0..12u64 {
        let d = 2 + (s % 2) as usize;
        let mut r = rng::stream(900, s);
        let k = ok(random_hull(d, 5 + (s % 4) as usize, 1000 + s))?;
        let l = ok(random_hull(d, 4 + (s % 3) as usize, 2000 + s))?;
        let dirs = directions(&mut r, d, 20);
        run(support_additivity(&k, &l, &dirs))?;
        run(cap_nesting(&k, &dirs[0], 0.2, 0.7))?;
        run(cap_sum_inclusion(&k, &l, &dirs[1], 0.3, 0.5))?;
        run(cap_sum_homothetic(&k, 0.7, &dirs[2], &dirs[3], 0.4))?;
        run(difference_bodies(&k, &l, &dirs))?;
        run(normal_cone_tiling(&k, &dirs))?;
        run(motion_invariance(&k, &random_motion(&mut r, d, 1.0)))?;
        run(valuation(&random_box(&mut r, d), &random_box(&mut r, d)))?;
        run(split_additivity(&k, &random_box(&mut r, d), s as usize % d, 0.37))?;
        run(vertex_angles_sum_to_one(&k))?;
        run(gram_relation(&k))?;
        run(cap_diameter(&k, &dirs[4], [0.01, 0.05, 0.1][s as usize % 3], 2000, s))?;
    }
    let pts: Vec<_> = (0..3000).map(|i| vector(&[i as f64 / 3000.0, (i as f64 * 0.37).sin() * 0.2])).collect();
    run(bracket_inequalities(&pts, 1))?;
    run(reproducibility())?;
    within(Duration::from_secs(300), start)?;
    Ok(format!("{count} checks green, including worker-count reproducibility"))
}

/// Bitwise equality of Monte-Carlo and content outputs on 1 and 4 workers.
fn reproducibility() -> Check {
    let run = |threads: usize| -> Result<Vec<u64>, String> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
        pool.install(|| {
            let (a, b) = squares();
            let l = ok(pkf_lhs_mc(&PkfProblem::new(a, b, 0), 50_000, 5))?;
            let s = ok(steiner_volume(&HPolytope::cube(3, 0.0, 1.0), 0.5, 20_000, 6))?;
            let set = ok(sigma_set(&HPolytope::cube(2, 0.0, 1.0), &HPolytope::cube(2, 0.0, 1.0)))?;
            let pts = ok(set.sample(5000, 7))?;
            let e = ok(piece_content(&set, 5000, 7, 6))?;
            let mut bits = vec![l.estimate.to_bits(), l.stderr.to_bits(), s.mc.to_bits(), s.stderr.to_bits(), e.dimension.to_bits()];
            bits.extend(pts.iter().flat_map(|p| p.iter().map(|x| x.to_bits())));
            bits.extend(e.scales.iter().map(|s| s.content_hi.to_bits()));
            bits.push(PointCloud::new(4, &pts).len() as u64);
            Ok(bits)
        })
    };
    let one = run(1)?;
    let four = run(4)?;
    ensure(one == four, || "outputs differ between 1 and 4 workers".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("kinematic constants", constants),
        ("global kinematic formula", global_pkf),
        ("local kinematic formula", local_pkf),
        ("normal-cycle decomposition", decomposition),
        ("Steiner cross-validation", steiner),
        ("weak regularity", regularity),
        ("nor_eps content", nor_eps_fits),
        ("Σ_{A,B} content", sigma_fit),
        ("T_K content", tk_fits),
        ("graph of ∂f content", graph_fit),
        ("invariant suites", invariant_suites),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2}  {tag}  {name}: {detail} [{t:.1} s]", i + 1);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
