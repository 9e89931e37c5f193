use rayon::prelude::*;

use crate::linalg::Vector;
use crate::rng;

use super::kdtree::KdTree;

/// Relative slack on covering radii.
const RADIUS_SLACK: f64 = 1e-12;
/// Farthest in-ball points tried as alternative centres per uncovered point.
const ANCHOR_CANDIDATES: usize = 8;
const THIN_KEY: u64 = 0x7417;

/// Points in a fixed canonical (lexicographic) order, so greedy nets are
/// deterministic.
#[derive(Clone, Debug)]
pub struct PointCloud {
    dim: usize,
    data: Vec<f64>,
}

impl PointCloud {
    pub fn new(dim: usize, points: &[Vector]) -> PointCloud {
        let mut pts: Vec<&Vector> = points.iter().collect();
        pts.sort_by(|a, b| a.iter().zip(b.iter()).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
        let data = pts.iter().flat_map(|p| p.iter().copied()).collect();
        PointCloud { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        if self.dim == 0 {
            0
        } else {
            self.data.len() / self.dim
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn tree(&self) -> KdTree<'_> {
        KdTree::new(&self.data, self.dim)
    }

    pub fn diameter_bound(&self) -> f64 {
        let mut s = 0.0;
        for k in 0..self.dim {
            let (lo, hi) = (0..self.len()).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
                let v = self.data[i * self.dim + k];
                (lo.min(v), hi.max(v))
            });
            s += (hi - lo) * (hi - lo);
        }
        s.sqrt()
    }

    /// Deterministic random subsample keeping each point with probability
    /// `fraction` (hash of its canonical index), still in canonical order.
    pub fn thinned(&self, fraction: f64) -> PointCloud {
        if fraction >= 1.0 {
            return self.clone();
        }
        let cut = fraction * u64::MAX as f64;
        let data = (0..self.len()).filter(|&i| (rng::mix(THIN_KEY, i as u64) as f64) < cut).flat_map(|i| self.point(i).iter().copied()).collect();
        PointCloud { dim: self.dim, data }
    }

    /// A high quantile (0.99) of nearest-neighbour distances over up to 2000
    /// probe points; the scale below which the cloud no longer resolves the set.
    pub fn spacing(&self) -> f64 {
        let n = self.len();
        if n < 2 {
            return 0.0;
        }
        let tree = self.tree();
        let step = (n / 2000).max(1);
        let mut d: Vec<f64> = (0..n).step_by(step).map(|i| tree.nearest(self.point(i), Some(i)).map_or(0.0, |(_, d2)| d2.sqrt())).collect();
        d.sort_by(f64::total_cmp);
        d[((d.len() - 1) as f64 * 0.99) as usize]
    }
}

fn radius2(r: f64) -> f64 {
    let r = r * (1.0 + RADIUS_SLACK);
    r * r
}

/// Size of the greedy `r`-net in canonical order. Its centres are pairwise
/// more than `r` apart and their `r`-balls cover the cloud.
pub fn greedy_net(cloud: &PointCloud, tree: &KdTree, r: f64) -> usize {
    let r2 = radius2(r);
    let mut covered = vec![false; cloud.len()];
    let mut count = 0;
    for i in 0..cloud.len() {
        if covered[i] {
            continue;
        }
        count += 1;
        tree.for_each_within(cloud.point(i), r2, |j, _| covered[j] = true);
    }
    count
}

/// Greedy cover where each uncovered point may be served by a centre up to
/// `r` away: the point itself or one of its farthest in-ball neighbours,
/// whichever covers the most uncovered points.
pub fn anchored_cover(cloud: &PointCloud, tree: &KdTree, r: f64) -> usize {
    let r2 = radius2(r);
    let mut covered = vec![false; cloud.len()];
    let mut count = 0;
    let mut near: Vec<(usize, f64)> = Vec::new();
    for i in 0..cloud.len() {
        if covered[i] {
            continue;
        }
        near.clear();
        tree.for_each_within(cloud.point(i), r2, |j, d2| near.push((j, d2)));
        near.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        let mut best = (i, 0usize);
        for &(c, _) in near.iter().take(ANCHOR_CANDIDATES).chain(std::iter::once(&(i, 0.0))) {
            let mut gain = 0;
            tree.for_each_within(cloud.point(c), r2, |j, _| gain += (!covered[j]) as usize);
            if gain > best.1 || (gain == best.1 && c == i) {
                best = (c, gain);
            }
        }
        count += 1;
        tree.for_each_within(cloud.point(best.0), r2, |j, _| covered[j] = true);
    }
    count
}

/// `(upper, lower)` bounds on the covering number `#(S, ε)` of the sampled
/// set: the better of two greedy covers, and the greedy `2ε`-net, whose
/// points are `2ε`-separated and so need distinct `ε`-balls.
pub fn covering_number(cloud: &PointCloud, eps: f64) -> (usize, usize) {
    if cloud.is_empty() {
        return (0, 0);
    }
    let tree = cloud.tree();
    bounds(cloud, &tree, eps)
}

pub(crate) fn bounds(cloud: &PointCloud, tree: &KdTree, eps: f64) -> (usize, usize) {
    let upper = greedy_net(cloud, tree, eps).min(anchored_cover(cloud, tree, eps));
    let lower = greedy_net(cloud, tree, 2.0 * eps);
    (upper, lower)
}

/// Bounds for every scale of a grid, computed in parallel.
pub fn covering_numbers(cloud: &PointCloud, grid: &[f64]) -> Vec<(usize, usize)> {
    if cloud.is_empty() {
        return vec![(0, 0); grid.len()];
    }
    let tree = cloud.tree();
    grid.par_iter().map(|&e| bounds(cloud, &tree, e)).collect()
}

/// `n` uniform random points of a pair of clouds' product (concatenated
/// coordinates), for product-rule checks.
pub fn product_cloud(a: &[Vector], b: &[Vector], n: usize, seed: u64) -> Vec<Vector> {
    use rand::Rng;
    let mut r = rng::stream(seed, 0);
    (0..n)
        .map(|_| {
            let p = &a[r.random_range(0..a.len())];
            let q = &b[r.random_range(0..b.len())];
            Vector::from_iterator(p.len() + q.len(), p.iter().chain(q.iter()).copied())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;
    use std::f64::consts::PI;

    #[test]
    fn unit_segment() {
        let pts: Vec<Vector> = (0..=10_000).map(|i| vector(&[i as f64 / 10_000.0, 0.0])).collect();
        let c = PointCloud::new(2, &pts);
        let (up, lo) = covering_number(&c, 0.1);
        assert_eq!(up, 5);
        assert!(lo <= up);
    }

    #[test]
    fn circle() {
        let pts: Vec<Vector> = (0..20_000).map(|i| {
            let t = 2.0 * PI * i as f64 / 20_000.0;
            vector(&[t.cos(), t.sin()])
        }).collect();
        let c = PointCloud::new(2, &pts);
        let (up, lo) = covering_number(&c, 0.01);
        assert!(up as f64 >= PI / 0.01 * 0.8 && up as f64 <= PI / 0.01 * 1.3, "{up}");
        assert!(lo <= up);
    }

    #[test]
    fn singleton() {
        let c = PointCloud::new(3, &[vector(&[1.0, 2.0, 3.0])]);
        for e in [1e-3, 0.1, 10.0] {
            assert_eq!(covering_number(&c, e), (1, 1));
        }
    }

    #[test]
    fn order_independent() {
        let pts: Vec<Vector> = (0..500).map(|i| vector(&[(i as f64 * 0.37).sin(), (i as f64 * 0.91).cos()])).collect();
        let mut rev = pts.clone();
        rev.reverse();
        assert_eq!(covering_number(&PointCloud::new(2, &pts), 0.1), covering_number(&PointCloud::new(2, &rev), 0.1));
    }
}
