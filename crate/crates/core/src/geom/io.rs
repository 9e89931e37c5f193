//! JSON exchange formats for polytopes and polyconvex sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{vector, Vector};

use super::{HPolytope, Halfspace, Polyconvex};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HJson {
    pub dim: usize,
    pub halfspaces: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub vertices: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolytopeJson {
    H(HJson),
    V(VJson),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BodyJson {
    Union { pieces: Vec<PolytopeJson> },
    Single(PolytopeJson),
}

impl PolytopeJson {
    pub fn to_polytope(&self) -> Result<HPolytope> {
        match self {
            PolytopeJson::H(HJson { dim, halfspaces }) => {
                let hs = halfspaces
                    .iter()
                    .map(|row| {
                        if row.len() != dim + 1 {
                            return Err(Error::DimensionMismatch { expected: dim + 1, found: row.len() });
                        }
                        Halfspace::from_row(row)
                    })
                    .collect::<Result<Vec<_>>>()?;
                HPolytope::from_halfspaces(*dim, &hs)?.ok_or(Error::Empty)
            }
            PolytopeJson::V(VJson { dim, vertices }) => {
                let d = dim.or_else(|| vertices.first().map(|v| v.len())).ok_or(Error::Empty)?;
                let pts: Vec<Vector> = vertices.iter().map(|v| vector(v)).collect();
                HPolytope::from_vertices(d, &pts)
            }
        }
    }

    pub fn from_polytope(p: &HPolytope) -> PolytopeJson {
        PolytopeJson::H(HJson {
            dim: p.dim(),
            halfspaces: p
                .halfspaces()
                .iter()
                .map(|h| h.normal.iter().copied().chain(std::iter::once(h.offset)).collect())
                .collect(),
        })
    }
}

impl BodyJson {
    pub fn to_polyconvex(&self) -> Result<Polyconvex> {
        match self {
            BodyJson::Single(p) => Ok(Polyconvex::single(p.to_polytope()?)),
            BodyJson::Union { pieces } => Polyconvex::new(pieces.iter().map(|p| p.to_polytope()).collect::<Result<_>>()?),
        }
    }

    pub fn from_polyconvex(u: &Polyconvex) -> BodyJson {
        BodyJson::Union { pieces: u.pieces.iter().map(PolytopeJson::from_polytope).collect() }
    }
}

pub fn parse_polytope(text: &str) -> Result<HPolytope> {
    serde_json::from_str::<PolytopeJson>(text)?.to_polytope()
}

pub fn parse_body(text: &str) -> Result<Polyconvex> {
    serde_json::from_str::<BodyJson>(text)?.to_polyconvex()
}

pub fn polytope_to_json(p: &HPolytope) -> String {
    serde_json::to_string_pretty(&PolytopeJson::from_polytope(p)).expect("serializable")
}

pub fn read_body(path: &std::path::Path) -> Result<Polyconvex> {
    parse_body(&std::fs::read_to_string(path)?)
}
