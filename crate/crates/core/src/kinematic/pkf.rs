use rayon::prelude::*;
use serde::Serialize;

use crate::curvature::{polyconvex_measure, Region};
use crate::error::{Error, Result};
use crate::geom::planar::{self, Halfplane, P2};
use crate::geom::{intersect, AngleBudget, AxisBox, Polyconvex, RigidMotion};
use crate::linalg::Vector;
use crate::rng::{self, Moments, CHUNK};

use super::{kinematic_constants, KinematicConstants, MotionSampler};

/// Largest tolerated fraction of resampled motions.
pub const MAX_RESAMPLE_RATE: f64 = 0.01;
const MAX_RETRIES: usize = 64;

/// Bodies, degree and localizing box unions (`None` is the constant 1).
#[derive(Clone, Debug)]
pub struct PkfProblem {
    pub a: Polyconvex,
    pub b: Polyconvex,
    pub j: usize,
    pub phi: Option<Vec<AxisBox>>,
    pub psi: Option<Vec<AxisBox>>,
}

impl PkfProblem {
    pub fn new(a: Polyconvex, b: Polyconvex, j: usize) -> PkfProblem {
        PkfProblem { a, b, j, phi: None, psi: None }
    }

    pub fn with_boxes(mut self, phi: Option<Vec<AxisBox>>, psi: Option<Vec<AxisBox>>) -> PkfProblem {
        self.phi = phi;
        self.psi = psi;
        self
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    fn check(&self) -> Result<()> {
        let d = self.dim();
        if self.b.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: self.b.dim() });
        }
        if self.j > d {
            return Err(Error::Precondition(format!("degree {} exceeds dimension {d}", self.j)));
        }
        for b in self.phi.iter().chain(&self.psi).flatten() {
            if b.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: b.dim() });
            }
        }
        Ok(())
    }
}

fn region_of(boxes: &Option<Vec<AxisBox>>) -> Region {
    match boxes {
        None => Region::all(),
        Some(b) if b.is_empty() => Region { terms: Vec::new() },
        Some(b) => Region::from_boxes(b),
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct LhsEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: usize,
    pub resampled: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PKFReport {
    pub j: usize,
    pub lhs: f64,
    pub stderr: f64,
    pub rhs: f64,
    pub z: f64,
    pub samples: usize,
    pub seed: u64,
    pub resampled: usize,
    pub resample_rate: f64,
    pub constants: KinematicConstants,
    pub pass: bool,
}

struct PlanarPiece {
    verts: Vec<P2>,
    hps: Vec<Halfplane>,
}

fn planar_pieces(u: &Polyconvex) -> Vec<PlanarPiece> {
    u.pieces
        .iter()
        .map(|p| {
            let verts = planar::ccw_vertices(p);
            let hps = planar::edge_halfplanes(&verts);
            PlanarPiece { verts, hps }
        })
        .collect()
}

fn planar_region(r: &Region) -> Vec<(f64, Vec<Halfplane>)> {
    r.terms.iter().map(|(s, hs)| (*s, hs.iter().map(Halfplane::from_halfspace).collect())).collect()
}

/// `Φ_j(∪(A_i ∩ B_k), region)` for planar pieces by inclusion–exclusion.
fn planar_phi(a: &[PlanarPiece], b: &[PlanarPiece], region: &[(f64, Vec<Halfplane>)], j: usize) -> f64 {
    let pairs: Vec<(usize, usize)> = (0..a.len()).flat_map(|i| (0..b.len()).map(move |k| (i, k))).collect();
    let mut buf = Vec::new();
    let mut total = 0.0;
    let mut stack: Vec<(usize, Vec<P2>, f64)> = Vec::new();
    for (n, &(i, k)) in pairs.iter().enumerate() {
        let poly = planar::clip_all(&a[i].verts, &b[k].hps, &mut buf);
        if !poly.is_empty() {
            stack.push((n, poly, 1.0));
        }
    }
    while let Some((last, poly, sign)) = stack.pop() {
        for (s, hs) in region {
            total += sign * s * planar::curvature_measures(&poly, hs, &mut buf)[j];
        }
        for (n, &(i, k)) in pairs.iter().enumerate().skip(last + 1) {
            let next = planar::clip_all(&poly, &a[i].hps, &mut buf);
            let next = planar::clip_all(&next, &b[k].hps, &mut buf);
            if !next.is_empty() {
                stack.push((n, next, -sign));
            }
        }
    }
    total
}

enum Evaluator {
    Planar { a: Vec<PlanarPiece>, b: Vec<PlanarPiece> },
    General { budget: AngleBudget },
}

impl Evaluator {
    fn new(p: &PkfProblem) -> Evaluator {
        if p.dim() == 2 {
            Evaluator::Planar { a: planar_pieces(&p.a), b: planar_pieces(&p.b) }
        } else {
            Evaluator::General { budget: AngleBudget::default() }
        }
    }

    fn eval(&self, p: &PkfProblem, phi: &Region, psi: &Region, g: &RigidMotion) -> Result<f64> {
        let region = phi.intersect(&psi.transformed(g));
        match self {
            Evaluator::Planar { a, b } => {
                let moved: Vec<PlanarPiece> = b
                    .iter()
                    .map(|piece| {
                        let verts: Vec<P2> = piece
                            .verts
                            .iter()
                            .map(|v| {
                                let x = g.apply(&Vector::from_vec(v.to_vec()));
                                [x[0], x[1]]
                            })
                            .collect();
                        let hps = planar::edge_halfplanes(&verts);
                        PlanarPiece { verts, hps }
                    })
                    .collect();
                Ok(planar_phi(a, &moved, &planar_region(&region), p.j))
            }
            Evaluator::General { budget } => {
                let mut pieces = Vec::new();
                for ai in &p.a.pieces {
                    for bk in &p.b.pieces {
                        if let Some(q) = intersect(ai, &bk.transformed(g))? {
                            pieces.push(q);
                        }
                    }
                }
                if pieces.is_empty() {
                    return Ok(0.0);
                }
                polyconvex_measure(&Polyconvex::new(pieces)?, p.j, &region, budget)
            }
        }
    }
}

fn is_degenerate(e: &Error) -> bool {
    matches!(e, Error::ToleranceAmbiguity(_) | Error::GeneralPosition(_) | Error::Degenerate { .. })
}

/// Monte-Carlo estimate of `∫ Φ_j(A∩γB, E_φ ∩ γE_ψ) dγ`.
///
/// Samples are split into fixed chunks with one random stream per chunk, so
/// the result does not depend on the number of worker threads. Motions whose
/// contact is numerically degenerate are redrawn and counted.
pub fn pkf_lhs_mc(p: &PkfProblem, samples: usize, seed: u64) -> Result<LhsEstimate> {
    p.check()?;
    if samples == 0 {
        return Err(Error::Precondition("sample count must be positive".into()));
    }
    let b_points: Vec<Vector> = p.b.pieces.iter().flat_map(|q| q.vertices().iter().cloned()).collect();
    let sampler = MotionSampler::new(p.a.bounding_box(), b_points);
    let eval = Evaluator::new(p);
    let phi = region_of(&p.phi);
    let psi = region_of(&p.psi);
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Result<(Moments, usize)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut r = rng::stream(seed, c as u64);
            let n = CHUNK.min(samples - c * CHUNK);
            let mut m = Moments::default();
            let mut resampled = 0;
            for _ in 0..n {
                let mut tries = 0;
                loop {
                    let s = sampler.sample(&mut r);
                    match eval.eval(p, &phi, &psi, &s.motion) {
                        Ok(v) => {
                            m.push(s.weight * v);
                            break;
                        }
                        Err(e) if is_degenerate(&e) && tries < MAX_RETRIES => {
                            tries += 1;
                            resampled += 1;
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            Ok((m, resampled))
        })
        .collect();
    let mut total = Moments::default();
    let mut resampled = 0;
    for part in parts {
        let (m, r) = part?;
        total = total.merge(m);
        resampled += r;
    }
    let rate = resampled as f64 / samples as f64;
    if rate > MAX_RESAMPLE_RATE {
        return Err(Error::ResampleAbort { rate, resampled });
    }
    Ok(LhsEstimate { estimate: total.mean(), stderr: total.stderr(), samples, resampled })
}

/// `Σ_{k+l=d+j} c^j_{k,l} Φ_k(A,φ) Φ_l(B,ψ)`.
pub fn pkf_rhs(p: &PkfProblem) -> Result<(f64, KinematicConstants)> {
    p.check()?;
    let d = p.dim();
    let c = kinematic_constants(d, p.j)?;
    let budget = AngleBudget::default();
    let phi = region_of(&p.phi);
    let psi = region_of(&p.psi);
    let mut total = 0.0;
    for e in &c.entries {
        let fa = polyconvex_measure(&p.a, e.k, &phi, &budget)?;
        if fa == 0.0 {
            continue;
        }
        total += e.value * fa * polyconvex_measure(&p.b, e.l, &psi, &budget)?;
    }
    Ok((total, c))
}

/// Runs both sides; passes iff `|z| ≤ 4`.
pub fn verify_pkf(p: &PkfProblem, samples: usize, seed: u64) -> Result<PKFReport> {
    let (rhs, constants) = pkf_rhs(p)?;
    let lhs = pkf_lhs_mc(p, samples, seed)?;
    let diff = lhs.estimate - rhs;
    let z = if lhs.stderr > 0.0 {
        diff / lhs.stderr
    } else if diff.abs() <= 1e-12 * rhs.abs().max(1.0) {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(PKFReport {
        j: p.j,
        lhs: lhs.estimate,
        stderr: lhs.stderr,
        rhs,
        z,
        samples,
        seed,
        resampled: lhs.resampled,
        resample_rate: lhs.resampled as f64 / samples as f64,
        constants,
        pass: z.abs() <= 4.0,
    })
}
