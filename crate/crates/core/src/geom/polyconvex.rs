use crate::error::{Error, Result};

use super::polytope::{intersect, HPolytope};

/// A finite union of convex polytopes (pieces may overlap).
#[derive(Clone, Debug)]
pub struct Polyconvex {
    pub pieces: Vec<HPolytope>,
}

impl Polyconvex {
    pub fn new(pieces: Vec<HPolytope>) -> Result<Polyconvex> {
        let Some(first) = pieces.first() else {
            return Err(Error::Empty);
        };
        let d = first.dim();
        if let Some(p) = pieces.iter().find(|p| p.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
        }
        Ok(Polyconvex { pieces })
    }

    pub fn single(p: HPolytope) -> Polyconvex {
        Polyconvex { pieces: vec![p] }
    }

    pub fn dim(&self) -> usize {
        self.pieces[0].dim()
    }

    /// Every nonempty intersection `∩_{i∈I} K_i` with its index set, found by
    /// depth-first search (supersets of empty intersections are pruned).
    pub fn nerve(&self) -> Result<Vec<(Vec<usize>, HPolytope)>> {
        let mut out = Vec::new();
        let mut stack: Vec<(Vec<usize>, HPolytope)> =
            self.pieces.iter().enumerate().rev().map(|(i, p)| (vec![i], p.clone())).collect();
        while let Some((idx, p)) = stack.pop() {
            let last = *idx.last().unwrap();
            for j in (last + 1..self.pieces.len()).rev() {
                if let Some(q) = intersect(&p, &self.pieces[j])? {
                    let mut next = idx.clone();
                    next.push(j);
                    stack.push((next, q));
                }
            }
            out.push((idx, p));
        }
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(&b.0)));
        Ok(out)
    }

    pub fn bounding_box(&self) -> super::AxisBox {
        self.pieces.iter().skip(1).fold(self.pieces[0].bounding_box(), |b, p| b.union_hull(&p.bounding_box()))
    }

    pub fn contains(&self, x: &crate::linalg::Vector) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }
}

/// Euler characteristic of the union by inclusion–exclusion over the nerve.
pub fn euler_polyconvex(u: &Polyconvex) -> Result<i64> {
    Ok(u.nerve()?.iter().map(|(idx, _)| if idx.len() % 2 == 1 { 1 } else { -1 }).sum())
}
