use std::collections::BTreeSet;

use crate::error::Result;
use crate::linalg::{span_basis, Vector};

use super::polytope::HPolytope;

/// A face of a polytope, by vertex and facet indices into the owner.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
    /// Facets containing the face; empty for the polytope itself.
    pub facets: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    /// Sorted by dimension, then vertex indices. The last entry is the
    /// polytope itself.
    pub faces: Vec<Face>,
    /// Number of faces of each dimension below the polytope's own.
    pub f_vector: Vec<usize>,
}

impl FaceLattice {
    pub(crate) fn build(p: &HPolytope) -> Result<FaceLattice> {
        let m = p.affine_dim();
        let facet_sets: Vec<BTreeSet<usize>> =
            p.local_facets().iter().map(|f| f.vertices.iter().copied().collect()).collect();
        let mut sets: BTreeSet<Vec<usize>> = facet_sets.iter().map(|s| s.iter().copied().collect()).collect();
        let mut frontier: Vec<Vec<usize>> = sets.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for f in &facet_sets {
                    let meet: Vec<usize> = s.iter().copied().filter(|i| f.contains(i)).collect();
                    if !meet.is_empty() && sets.insert(meet.clone()) {
                        next.push(meet);
                    }
                }
            }
            frontier = next;
        }
        for i in 0..p.vertices().len() {
            sets.insert(vec![i]);
        }
        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|vs| {
                let facets = (0..facet_sets.len()).filter(|&f| vs.iter().all(|v| facet_sets[f].contains(v))).collect();
                let dim = affine_rank(p.local_vertices(), &vs);
                Face { dim, vertices: vs, facets }
            })
            .collect();
        faces.push(Face { dim: m, vertices: (0..p.vertices().len()).collect(), facets: Vec::new() });
        faces.sort();
        faces.dedup_by(|a, b| a.vertices == b.vertices);
        let mut f_vector = vec![0; m];
        for f in &faces {
            if f.dim < m {
                f_vector[f.dim] += 1;
            }
        }
        Ok(FaceLattice { faces, f_vector })
    }

    pub fn of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    /// Euler characteristic of the boundary complex, `Σ (−1)^k f_k`.
    pub fn boundary_euler(&self) -> i64 {
        self.f_vector.iter().enumerate().map(|(k, n)| if k % 2 == 0 { *n as i64 } else { -(*n as i64) }).sum()
    }
}

fn affine_rank(points: &[Vector], idx: &[usize]) -> usize {
    let base = &points[idx[0]];
    let diffs: Vec<Vector> = idx[1..].iter().map(|&i| &points[i] - base).collect();
    span_basis(&diffs, 1e-10).len()
}
