use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{unit_ball_volume, Matrix, Vector};

use rayon::prelude::*;

use super::covering::{bounds, covering_numbers, PointCloud};
use super::kdtree::KdTree;

/// Default number of scales.
pub const DEFAULT_SCALES: usize = 6;

/// `scales` radii in ratio 2 below `diameter / 8`, largest first.
pub fn eps_grid(diameter: f64, scales: usize) -> Vec<f64> {
    (0..scales).map(|k| diameter / 8.0 / 2f64.powi(k as i32)).collect()
}

/// Mean number of sample points per `ε`-ball below which a scale is not
/// resolved by the sample.
pub const MIN_NEIGHBOURS: f64 = 10.0;
/// Probe points used to estimate neighbour counts.
const PROBES: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub eps: f64,
    pub cover_upper: usize,
    pub pack_lower: usize,
    /// Mean number of samples within `ε` of a sample point.
    pub neighbours: f64,
    /// Cover count of a subsample thinned to the neighbour density of the
    /// finest resolved scale; `None` on unresolved scales.
    pub matched: Option<usize>,
}

/// Covering bounds of a sampled set at a grid of scales, in the Euclidean
/// metric of the ambient space.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContentCurve {
    pub ambient_dim: usize,
    pub samples: usize,
    /// High-quantile nearest-neighbour distance of the sample.
    pub spacing: f64,
    pub rows: Vec<CurveRow>,
    pub warnings: Vec<String>,
}

impl ContentCurve {
    /// Scales the sample resolves.
    pub fn usable(&self) -> impl Iterator<Item = &CurveRow> {
        self.rows.iter().filter(|r| r.matched.is_some())
    }
}

fn mean_neighbours(cloud: &PointCloud, tree: &KdTree, eps: f64) -> f64 {
    let n = cloud.len();
    let step = (n / PROBES).max(1);
    let (mut total, mut probes) = (0usize, 0usize);
    for i in (0..n).step_by(step) {
        tree.for_each_within(cloud.point(i), eps * eps, |_, _| total += 1);
        probes += 1;
    }
    total as f64 / probes.max(1) as f64
}

/// Counts per scale. Cover and packing bounds use the whole sample. The
/// `matched` counts, which feed the dimension fit, thin the sample on each
/// resolved scale so that every scale sees the same number of samples per
/// ball; the undersampling bias of a greedy cover then is a common factor
/// and drops out of the log-log slope.
pub fn content_curve(cloud: &PointCloud, grid: &[f64]) -> ContentCurve {
    let spacing = cloud.spacing();
    let counts = covering_numbers(cloud, grid);
    let tree = cloud.tree();
    let neighbours: Vec<f64> = grid.iter().map(|&e| mean_neighbours(cloud, &tree, e)).collect();
    let finest = neighbours.iter().copied().filter(|&k| k >= MIN_NEIGHBOURS).fold(f64::INFINITY, f64::min);
    let matched: Vec<Option<usize>> = grid
        .par_iter()
        .zip(&neighbours)
        .map(|(&eps, &k)| {
            (k >= MIN_NEIGHBOURS).then(|| {
                let sub = cloud.thinned(finest / k);
                let t = sub.tree();
                bounds(&sub, &t, eps).0
            })
        })
        .collect();
    let rows: Vec<CurveRow> = grid
        .iter()
        .zip(counts)
        .zip(neighbours.iter().zip(matched))
        .map(|((&eps, (cover_upper, pack_lower)), (&neighbours, matched))| CurveRow { eps, cover_upper, pack_lower, neighbours, matched })
        .collect();
    let mut warnings = Vec::new();
    if let Some(min) = grid.iter().copied().reduce(f64::min) {
        if spacing > min / 4.0 {
            warnings.push(format!("undersampled: spacing {spacing:.3e} exceeds ε_min/4 = {:.3e}", min / 4.0));
        }
    }
    for r in &rows {
        if r.pack_lower > r.cover_upper {
            warnings.push(format!("bracket violated at ε = {:.3e}: packing {} > cover {}", r.eps, r.pack_lower, r.cover_upper));
        }
    }
    let mut by_eps: Vec<&CurveRow> = rows.iter().collect();
    by_eps.sort_by(|a, b| a.eps.total_cmp(&b.eps));
    if by_eps.windows(2).any(|w| w[1].cover_upper > w[0].cover_upper) {
        warnings.push("cover counts not antitone in ε".into());
    }
    ContentCurve { ambient_dim: cloud.dim(), samples: cloud.len(), spacing, rows, warnings }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleContent {
    pub eps: f64,
    pub content_lo: f64,
    pub content_hi: f64,
    /// Geometric mean of the bracket.
    pub proxy: f64,
    pub usable: bool,
}

/// Per-scale `m`-content brackets and a box-dimension fit.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContentEstimate {
    pub m: usize,
    pub ambient_dim: usize,
    pub scales: Vec<ScaleContent>,
    /// Box-dimension fit from the matched counts on usable scales, with a
    /// first-order correction term once four scales are available.
    pub dimension: f64,
    pub dimension_stderr: f64,
    /// RMS residual of the dimension fit.
    pub fit_residual: f64,
    /// Plain slope of `log matched` against `log 1/ε`.
    pub slope: f64,
    pub usable_scales: usize,
    pub warnings: Vec<String>,
}

impl ContentEstimate {
    /// `max/min` of the content proxy over usable scales.
    pub fn proxy_ratio(&self) -> f64 {
        let p: Vec<f64> = self.scales.iter().filter(|s| s.usable && s.proxy > 0.0).map(|s| s.proxy).collect();
        if p.is_empty() {
            return f64::NAN;
        }
        p.iter().copied().fold(0.0, f64::max) / p.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Number of scales whose bracket contains `value`.
    pub fn brackets_containing(&self, value: f64) -> usize {
        self.scales.iter().filter(|s| s.content_lo <= value && value <= s.content_hi).count()
    }
}

/// Brackets `Vol(S_ε)` between `P(S,ε)·ω_D·ε^D` and `#(S,ε)·ω_D·(2ε)^D` and
/// normalizes by `ω_{D−m}·ε^{D−m}`, so that for a rectifiable `m`-set the
/// brackets straddle its `m`-measure at small scales.
pub fn estimate_content(curve: &ContentCurve, m: usize) -> Result<ContentEstimate> {
    let d = curve.ambient_dim;
    if m > d {
        return Err(Error::Precondition(format!("target dimension {m} exceeds ambient {d}")));
    }
    let norm = |eps: f64| unit_ball_volume(d) / unit_ball_volume(d - m) * eps.powi(m as i32);
    let scales = curve
        .rows
        .iter()
        .map(|r| {
            let lo = r.pack_lower as f64 * norm(r.eps);
            let hi = r.cover_upper as f64 * norm(r.eps) * 2f64.powi(d as i32);
            ScaleContent { eps: r.eps, content_lo: lo, content_hi: hi, proxy: (lo * hi).sqrt(), usable: r.matched.is_some() }
        })
        .collect();
    let mut warnings = curve.warnings.clone();
    let usable: Vec<(f64, usize)> = curve.rows.iter().filter_map(|r| r.matched.map(|c| (r.eps, c))).collect();
    if usable.len() < 4 {
        warnings.push(format!("ill-conditioned fit: {} usable scales", usable.len()));
    }
    let fit = fit_counts(&usable);
    Ok(ContentEstimate {
        m,
        ambient_dim: d,
        scales,
        dimension: fit.dimension,
        dimension_stderr: fit.stderr,
        fit_residual: fit.residual,
        slope: fit.slope,
        usable_scales: usable.len(),
        warnings,
    })
}

struct Fit {
    dimension: f64,
    stderr: f64,
    residual: f64,
    slope: f64,
}

/// Least squares on `(ε, count)` pairs. The plain log-log slope, and, with at
/// least four points, the exponent of `log N = c + m·log(1/ε) + β·ε`, whose
/// `β·ε` term absorbs the first-order tube correction at coarse scales.
fn fit_counts(pts: &[(f64, usize)]) -> Fit {
    let nan = Fit { dimension: f64::NAN, stderr: f64::NAN, residual: f64::NAN, slope: f64::NAN };
    let pts: Vec<(f64, f64, f64)> = pts.iter().filter(|p| p.1 > 0).map(|&(e, c)| (e, (1.0 / e).ln(), (c as f64).ln())).collect();
    if pts.len() < 2 {
        return nan;
    }
    let slope = regress(&pts, 2).0[1];
    let cols = if pts.len() >= 4 { 3 } else { 2 };
    let (x, stderr, residual) = regress(&pts, cols);
    Fit { dimension: x[1], stderr, residual, slope }
}

/// Coefficients, standard error of the slope coefficient and RMS residual.
fn regress(pts: &[(f64, f64, f64)], cols: usize) -> (Vec<f64>, f64, f64) {
    let n = pts.len();
    let a = Matrix::from_fn(n, cols, |i, j| [1.0, pts[i].1, pts[i].0][j]);
    let y = Vector::from_iterator(n, pts.iter().map(|p| p.2));
    let ata = a.transpose() * &a;
    let Some(inv) = ata.try_inverse() else {
        return (vec![f64::NAN; cols], f64::NAN, f64::NAN);
    };
    let x = &inv * (a.transpose() * &y);
    let rss = (&a * &x - &y).norm_squared();
    let stderr = if n > cols { (rss / (n - cols) as f64 * inv[(1, 1)]).sqrt() } else { f64::NAN };
    (x.iter().copied().collect(), stderr, (rss / n as f64).sqrt())
}
