//! Dispatch from a configuration to the library operations.

use std::path::Path;

use kinemalab_core::content::{estimate_content, graph_clarke_set, nor_eps_set, piece_curve, sigma_set, tk_set, DEFAULT_SCALES};
use kinemalab_core::curvature::{steiner_volume, Region};
use kinemalab_core::dc::{aura_polytope, weak_regularity, DCFunction, RegularityStatus};
use kinemalab_core::geom::AngleBudget;
use kinemalab_core::kinematic::{decompose, kinematic_constants, verify_pkf, PkfProblem};
use kinemalab_core::rng;
use kinemalab_core::{AxisBox, HPolytope, Polyconvex, RigidMotion};

use crate::config::{axis_box, boxes, motion, ContentSet, Experiment, ExperimentConfig, Inputs};
use crate::report::{num, Counters, Criterion, Table};
use crate::CliError;

pub struct Outcome {
    pub criteria: Vec<Criterion>,
    pub metrics: serde_json::Value,
    pub table: Table,
    pub counters: Counters,
}

fn json<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn dispatch(c: &ExperimentConfig, base: &Path) -> Result<Outcome, CliError> {
    let inputs = Inputs { base };
    match c.experiment {
        Experiment::Pkf => pkf(c, &inputs),
        Experiment::Decomposition => decomposition(c, &inputs),
        Experiment::Steiner => steiner(c, &inputs),
        Experiment::Content => content(c, &inputs),
        Experiment::Weakreg => weakreg(c, &inputs),
        Experiment::Constants => constants(c),
    }
}

fn body_or(inputs: &Inputs, b: &Option<crate::config::BodyInput>, default: HPolytope) -> Result<Polyconvex, CliError> {
    match b {
        Some(b) => inputs.body(b),
        None => Ok(Polyconvex::single(default)),
    }
}

fn polytope_or(inputs: &Inputs, b: &Option<crate::config::BodyInput>, default: HPolytope) -> Result<HPolytope, CliError> {
    match b {
        Some(b) => inputs.polytope(b),
        None => Ok(default),
    }
}

fn function_or_square(inputs: &Inputs, c: &ExperimentConfig) -> Result<DCFunction, CliError> {
    match &c.function {
        Some(f) => inputs.function(f),
        None => Ok(aura_polytope(&HPolytope::cube(2, -1.0, 1.0))?),
    }
}

fn window_or(c: &ExperimentConfig, d: usize) -> Result<AxisBox, CliError> {
    let w = match &c.window {
        Some(w) => axis_box(w)?,
        None => AxisBox::cube(d, -2.0, 2.0),
    };
    if w.dim() != d {
        return Err(CliError::Config(format!("window has dimension {}, function has {d}", w.dim())));
    }
    Ok(w)
}

/// Monte-Carlo check of the (local) kinematic formula. Defaults to the
/// squares `[0,1]²` and `[0,½]²`.
fn pkf(c: &ExperimentConfig, inputs: &Inputs) -> Result<Outcome, CliError> {
    let a = body_or(inputs, &c.a, HPolytope::cube(2, 0.0, 1.0))?;
    let b = body_or(inputs, &c.b, HPolytope::cube(2, 0.0, 0.5))?;
    let p = PkfProblem::new(a, b, c.j.unwrap_or(0)).with_boxes(boxes(&c.phi)?, boxes(&c.psi)?);
    let r = verify_pkf(&p, c.samples.unwrap_or(1_000_000), c.seed)?;
    let mut table = Table::new(&["j", "lhs", "stderr", "rhs", "z", "samples", "resampled"]);
    table.push(vec![r.j.to_string(), num(r.lhs), num(r.stderr), num(r.rhs), num(r.z), r.samples.to_string(), r.resampled.to_string()]);
    Ok(Outcome {
        criteria: vec![Criterion::at_most("|z| of lhs against rhs", r.z.abs(), c.tolerances.z_max())],
        metrics: json(&r),
        table,
        counters: Counters { resampled: r.resampled, warnings: Vec::new() },
    })
}

/// Exact decomposition of `Φ_k(A ∩ γB)`. Defaults to two unit squares with
/// `γ` a rotation by 0.3 and a shift by `(0.5, 0.4)`.
fn decomposition(c: &ExperimentConfig, inputs: &Inputs) -> Result<Outcome, CliError> {
    let a = polytope_or(inputs, &c.a, HPolytope::cube(2, 0.0, 1.0))?;
    let b = polytope_or(inputs, &c.b, HPolytope::cube(2, 0.0, 1.0))?;
    let d = a.dim();
    let g = match &c.motion {
        Some(m) => motion(m, d)?,
        None if d == 2 => RigidMotion::planar(0.3, [0.5, 0.4]),
        None => return Err(CliError::Config("a motion is required outside the plane".into())),
    };
    let region = match boxes(&c.region)? {
        Some(bs) => Region::from_boxes(&bs),
        None => Region::all(),
    };
    let checks = decompose(&a, &b, &g, &region, &AngleBudget { seed: c.seed, ..AngleBudget::default() })?;
    let mut table = Table::new(&["k", "lhs", "connecting", "from_a", "from_b", "interior", "rhs", "residual"]);
    let mut criteria = Vec::new();
    for k in &checks {
        table.push(vec![k.k.to_string(), num(k.lhs), num(k.connecting), num(k.from_a), num(k.from_b), num(k.interior), num(k.rhs), num(k.residual)]);
        criteria.push(Criterion::at_most(format!("residual at k={}", k.k), k.residual, c.tolerances.residual()));
    }
    Ok(Outcome { criteria, metrics: json(&checks), table, counters: Counters::default() })
}

/// Steiner formula against a Monte-Carlo volume of `P_ε`. Defaults to the
/// unit cube at `ε ∈ {0.1, 0.5, 1}`.
fn steiner(c: &ExperimentConfig, inputs: &Inputs) -> Result<Outcome, CliError> {
    let p = polytope_or(inputs, &c.a, HPolytope::cube(3, 0.0, 1.0))?;
    let radii = c.eps.clone().unwrap_or_else(|| vec![0.1, 0.5, 1.0]);
    let samples = c.samples.unwrap_or(100_000);
    let mut table = Table::new(&["eps", "formula", "mc", "stderr", "z"]);
    let mut criteria = Vec::new();
    let mut metrics = Vec::new();
    for (i, &eps) in radii.iter().enumerate() {
        let s = steiner_volume(&p, eps, samples, rng::mix(c.seed, i as u64))?;
        table.push(vec![num(eps), num(s.formula), num(s.mc), num(s.stderr), num(s.z())]);
        criteria.push(Criterion::at_most(format!("|z| at eps={eps}"), s.z().abs(), c.tolerances.z_max()));
        metrics.push(serde_json::json!({"eps": eps, "formula": s.formula, "mc": s.mc, "stderr": s.stderr, "z": s.z()}));
    }
    Ok(Outcome { criteria, metrics: serde_json::Value::Array(metrics), table, counters: Counters::default() })
}

/// Covering curve, content brackets and dimension fit of one of the
/// structured sets. Defaults to `nor_ε` of the square aura at `ε = ½`.
fn content(c: &ExperimentConfig, inputs: &Inputs) -> Result<Outcome, CliError> {
    let set = match c.set.unwrap_or(ContentSet::NorEps) {
        ContentSet::NorEps => {
            let f = function_or_square(inputs, c)?;
            let eps = match c.eps.as_deref() {
                None => 0.5,
                Some([e]) => *e,
                Some(_) => return Err(CliError::Config("nor-eps content takes a single eps".into())),
            };
            nor_eps_set(&f, eps, &window_or(c, f.dim())?)?
        }
        ContentSet::Graph => {
            let f = function_or_square(inputs, c)?;
            graph_clarke_set(&f, &window_or(c, f.dim())?)?
        }
        ContentSet::Sigma => {
            let a = polytope_or(inputs, &c.a, HPolytope::cube(2, 0.0, 1.0))?;
            let b = polytope_or(inputs, &c.b, HPolytope::cube(2, 0.0, 1.0))?;
            sigma_set(&a, &b)?
        }
        ContentSet::Tk => tk_set(&polytope_or(inputs, &c.a, HPolytope::cube(3, 0.0, 1.0))?)?,
    };
    let scales = c.scales.unwrap_or(DEFAULT_SCALES);
    let curve = piece_curve(&set, c.samples.unwrap_or(50_000), c.seed, scales)?;
    let est = estimate_content(&curve, set.target_dim)?;
    let mut table = Table::new(&["eps", "cover_upper", "pack_lower", "content_lo", "content_hi"]);
    for (row, s) in curve.rows.iter().zip(&est.scales) {
        table.push(vec![num(row.eps), row.cover_upper.to_string(), row.pack_lower.to_string(), num(s.content_lo), num(s.content_hi)]);
    }
    let mut criteria = Vec::new();
    if let Some(m) = c.expect_dimension {
        criteria.push(Criterion::at_most("|fitted dimension − expected|", (est.dimension - m).abs(), c.tolerances.dimension()));
    }
    if let Some(v) = c.expect_content {
        let need = scales.saturating_sub(2).max(1);
        criteria.push(Criterion::at_least("scales whose bracket contains the expected content", est.brackets_containing(v) as f64, need as f64));
    }
    if !set.is_empty() {
        criteria.push(Criterion::at_most("content proxy max/min ratio", est.proxy_ratio(), c.tolerances.proxy_ratio()));
    }
    let warnings = est.warnings.clone();
    Ok(Outcome {
        criteria,
        metrics: serde_json::json!({"target_dim": set.target_dim, "pieces": set.pieces.len(), "estimate": est, "curve": curve}),
        table,
        counters: Counters { resampled: 0, warnings },
    })
}

/// Weak-regularity certificate. Defaults to the square aura at level 0 on
/// `[−2,2]²` with band height ½.
fn weakreg(c: &ExperimentConfig, inputs: &Inputs) -> Result<Outcome, CliError> {
    let f = function_or_square(inputs, c)?;
    let window = window_or(c, f.dim())?;
    let level = c.level.unwrap_or(0.0);
    let delta = c.delta.unwrap_or(0.5);
    let cert = weak_regularity(&f, level, &window, delta)?;
    let status = match cert.status {
        RegularityStatus::Regular { .. } => "regular",
        RegularityStatus::Vacuous => "vacuous",
        RegularityStatus::Failed { .. } => "failed",
    };
    let eps0 = cert.eps0();
    let mut table = Table::new(&["level", "delta", "status", "eps0"]);
    table.push(vec![num(level), num(delta), status.to_string(), eps0.map(num).unwrap_or_default()]);
    let failed = matches!(cert.status, RegularityStatus::Failed { .. });
    let mut criteria = vec![Criterion::at_most("failed band cells", if failed { 1.0 } else { 0.0 }, 0.0)];
    if let Some(e) = c.expect_eps0 {
        criteria.push(Criterion::at_most("|eps0 − expected|", eps0.map_or(f64::INFINITY, |x| (x - e).abs()), c.tolerances.eps0()));
    }
    Ok(Outcome { criteria, metrics: json(&cert), table, counters: Counters::default() })
}

/// Kinematic constants by the template method, for one `j` or all.
fn constants(c: &ExperimentConfig) -> Result<Outcome, CliError> {
    let d = c.d.unwrap_or(2);
    let js: Vec<usize> = match c.j {
        Some(j) => vec![j],
        None => (0..=d).collect(),
    };
    let tol = c.tolerances.residual.unwrap_or(1e-9);
    let mut table = Table::new(&["d", "j", "k", "l", "value", "residual"]);
    let mut criteria = Vec::new();
    let mut metrics = Vec::new();
    for j in js {
        let k = kinematic_constants(d, j)?;
        for e in &k.entries {
            table.push(vec![d.to_string(), j.to_string(), e.k.to_string(), e.l.to_string(), num(e.value), num(k.residual)]);
        }
        criteria.push(Criterion::at_most(format!("template residual for j={j}"), k.residual, tol));
        metrics.push(json(&k));
    }
    Ok(Outcome { criteria, metrics: serde_json::Value::Array(metrics), table, counters: Counters::default() })
}
