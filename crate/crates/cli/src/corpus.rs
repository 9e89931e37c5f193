//! Generated body corpora for experiments and regression inputs.

use std::path::Path;

use kinemalab_core::geom::corpus::{random_hull, random_simplex, union_ring, unit_box};
use kinemalab_core::geom::euler_polyconvex;
use kinemalab_core::geom::io::BodyJson;
use kinemalab_core::{rng, Polyconvex};
use serde::Serialize;

use crate::report::num;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    RandomHull,
    Box,
    Simplex,
    UnionRing,
}

impl Kind {
    pub fn parse(s: &str) -> Result<Kind, CliError> {
        match s {
            "random-hull" => Ok(Kind::RandomHull),
            "box" => Ok(Kind::Box),
            "simplex" => Ok(Kind::Simplex),
            "union-ring" => Ok(Kind::UnionRing),
            _ => Err(CliError::Config(format!("unknown corpus kind {s:?} (random-hull, box, simplex, union-ring)"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::RandomHull => "random-hull",
            Kind::Box => "box",
            Kind::Simplex => "simplex",
            Kind::UnionRing => "union-ring",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusSpec {
    pub kind: Kind,
    pub dim: usize,
    /// Number of Gaussian points of a random hull.
    pub n: usize,
    pub count: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub file: String,
    pub kind: &'static str,
    pub dim: usize,
    pub pieces: usize,
    /// Face numbers `f_0, …, f_{d−1}` of a single convex body.
    pub f_vector: Option<Vec<usize>>,
    pub euler: i64,
    pub volume: f64,
}

/// Volume of a union by inclusion–exclusion over the nerve.
fn union_volume(u: &Polyconvex) -> Result<f64, CliError> {
    let nerve = u.nerve()?;
    Ok(nerve.iter().map(|(idx, p)| if idx.len() % 2 == 1 { p.volume() } else { -p.volume() }).sum())
}

pub fn generate(spec: &CorpusSpec, i: usize) -> Result<Polyconvex, CliError> {
    let seed = rng::mix(spec.seed, i as u64);
    let body = match spec.kind {
        Kind::RandomHull => Polyconvex::single(random_hull(spec.dim, spec.n, seed)?),
        Kind::Simplex => Polyconvex::single(random_simplex(spec.dim, seed)?),
        Kind::Box => Polyconvex::single(unit_box(spec.dim)),
        Kind::UnionRing => union_ring(spec.dim)?,
    };
    Ok(body)
}

pub fn describe(file: String, kind: Kind, u: &Polyconvex) -> Result<CorpusEntry, CliError> {
    let f_vector = match u.pieces.as_slice() {
        [p] => Some(p.faces()?.f_vector),
        _ => None,
    };
    Ok(CorpusEntry { file, kind: kind.name(), dim: u.dim(), pieces: u.pieces.len(), f_vector, euler: euler_polyconvex(u)?, volume: union_volume(u)? })
}

/// Writes `body_NNN.json` for each body and a `corpus.csv` index into `dir`.
pub fn write_corpus(spec: &CorpusSpec, dir: &Path) -> Result<Vec<CorpusEntry>, CliError> {
    if spec.count == 0 {
        return Err(CliError::Config("count must be positive".into()));
    }
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let mut entries = Vec::with_capacity(spec.count);
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(["file", "kind", "dim", "pieces", "f_vector", "euler", "volume"]).map_err(csv_err)?;
    for i in 0..spec.count {
        let body = generate(spec, i)?;
        let file = format!("body_{i:03}.json");
        let text = serde_json::to_string_pretty(&BodyJson::from_polyconvex(&body)).expect("serializable");
        std::fs::write(dir.join(&file), text).map_err(io)?;
        let e = describe(file, spec.kind, &body)?;
        let fv = e.f_vector.as_ref().map(|f| f.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")).unwrap_or_default();
        w.write_record([e.file.clone(), e.kind.to_string(), e.dim.to_string(), e.pieces.to_string(), fv, e.euler.to_string(), num(e.volume)])
            .map_err(csv_err)?;
        entries.push(e);
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    std::fs::write(dir.join("corpus.csv"), bytes).map_err(io)?;
    Ok(entries)
}
