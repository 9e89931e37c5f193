use crate::geom::{AxisBox, Halfspace, RigidMotion};
use crate::linalg::Vector;

/// A signed combination `Σ s_i · 1_{C_i}` of convex regions, each an
/// intersection of halfspaces (an empty list is all of space).
///
/// Finite unions of boxes are stored through inclusion–exclusion so that a
/// measure of the union is the signed sum of measures of convex pieces.
#[derive(Clone, Debug)]
pub struct Region {
    pub terms: Vec<(f64, Vec<Halfspace>)>,
}

impl Region {
    pub fn all() -> Region {
        Region { terms: vec![(1.0, Vec::new())] }
    }

    pub fn convex(halfspaces: Vec<Halfspace>) -> Region {
        Region { terms: vec![(1.0, halfspaces)] }
    }

    pub fn from_box(b: &AxisBox) -> Region {
        Region::convex(b.halfspaces())
    }

    /// Union of boxes by inclusion–exclusion over their intersections.
    pub fn from_boxes(boxes: &[AxisBox]) -> Region {
        let mut terms = Vec::new();
        let n = boxes.len();
        for mask in 1u64..(1u64 << n) {
            let mut lo = vec![f64::NEG_INFINITY; boxes[0].dim()];
            let mut hi = vec![f64::INFINITY; boxes[0].dim()];
            for (i, b) in boxes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for k in 0..b.dim() {
                        lo[k] = lo[k].max(b.lo[k]);
                        hi[k] = hi[k].min(b.hi[k]);
                    }
                }
            }
            if lo.iter().zip(&hi).any(|(a, b)| a > b) {
                continue;
            }
            let sign = if mask.count_ones() % 2 == 1 { 1.0 } else { -1.0 };
            terms.push((sign, AxisBox { lo, hi }.halfspaces()));
        }
        Region { terms }
    }

    pub fn is_all(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 1.0 && self.terms[0].1.is_empty()
    }

    /// Pointwise product of indicator combinations.
    pub fn intersect(&self, other: &Region) -> Region {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                terms.push((s * t, a.iter().chain(b).cloned().collect()));
            }
        }
        Region { terms }
    }

    pub fn transformed(&self, g: &RigidMotion) -> Region {
        Region {
            terms: self
                .terms
                .iter()
                .map(|(s, hs)| {
                    let mapped = hs
                        .iter()
                        .map(|h| {
                            let n = g.apply_direction(&h.normal);
                            Halfspace { offset: h.offset + n.dot(&g.translation), normal: n }
                        })
                        .collect();
                    (*s, mapped)
                })
                .collect(),
        }
    }

    /// Value of the indicator combination at `x` (0 or 1 for box unions).
    pub fn indicator(&self, x: &Vector) -> f64 {
        self.terms.iter().filter(|(_, hs)| hs.iter().all(|h| h.eval(x) <= 0.0)).map(|(s, _)| s).sum()
    }
}
