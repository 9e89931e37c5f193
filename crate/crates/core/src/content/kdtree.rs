//! A static k-d tree over a flat point array, for radius and
//! nearest-neighbour queries in runtime dimension.

const LEAF: usize = 16;

enum Node {
    Leaf { start: usize, end: usize },
    Split { axis: usize, value: f64, left: Box<Node>, right: Box<Node> },
}

pub struct KdTree<'a> {
    dim: usize,
    data: &'a [f64],
    order: Vec<usize>,
    root: Node,
}

impl<'a> KdTree<'a> {
    /// `data` holds `data.len() / dim` points, row-major.
    pub fn new(data: &'a [f64], dim: usize) -> KdTree<'a> {
        let n = if dim == 0 { 0 } else { data.len() / dim };
        let mut order: Vec<usize> = (0..n).collect();
        let root = build(data, dim, &mut order, 0, n);
        KdTree { dim, data, order, root }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Calls `f(index, squared distance)` for every point with
    /// `‖p − q‖² ≤ r2`.
    pub fn for_each_within(&self, q: &[f64], r2: f64, mut f: impl FnMut(usize, f64)) {
        self.within(&self.root, q, r2, &mut f);
    }

    fn within(&self, node: &Node, q: &[f64], r2: f64, f: &mut impl FnMut(usize, f64)) {
        match node {
            Node::Leaf { start, end } => {
                for &i in &self.order[*start..*end] {
                    let d2 = dist2(self.point(i), q);
                    if d2 <= r2 {
                        f(i, d2);
                    }
                }
            }
            Node::Split { axis, value, left, right } => {
                let diff = q[*axis] - value;
                let (near, far) = if diff <= 0.0 { (left, right) } else { (right, left) };
                self.within(near, q, r2, f);
                if diff * diff <= r2 {
                    self.within(far, q, r2, f);
                }
            }
        }
    }

    /// Nearest point other than `skip`, with its squared distance.
    pub fn nearest(&self, q: &[f64], skip: Option<usize>) -> Option<(usize, f64)> {
        let mut best = None;
        self.nn(&self.root, q, skip, &mut best);
        best
    }

    fn nn(&self, node: &Node, q: &[f64], skip: Option<usize>, best: &mut Option<(usize, f64)>) {
        match node {
            Node::Leaf { start, end } => {
                for &i in &self.order[*start..*end] {
                    if Some(i) == skip {
                        continue;
                    }
                    let d2 = dist2(self.point(i), q);
                    if best.is_none_or(|(_, b)| d2 < b) {
                        *best = Some((i, d2));
                    }
                }
            }
            Node::Split { axis, value, left, right } => {
                let diff = q[*axis] - value;
                let (near, far) = if diff <= 0.0 { (left, right) } else { (right, left) };
                self.nn(near, q, skip, best);
                if best.is_none_or(|(_, b)| diff * diff < b) {
                    self.nn(far, q, skip, best);
                }
            }
        }
    }
}

pub fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn build(data: &[f64], dim: usize, order: &mut [usize], start: usize, end: usize) -> Node {
    if end - start <= LEAF {
        return Node::Leaf { start, end };
    }
    let slice = &mut order[start..end];
    let mut axis = 0;
    let mut spread = -1.0;
    for k in 0..dim {
        let (lo, hi) = slice.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| {
            let v = data[i * dim + k];
            (lo.min(v), hi.max(v))
        });
        if hi - lo > spread {
            spread = hi - lo;
            axis = k;
        }
    }
    if spread <= 0.0 {
        return Node::Leaf { start, end };
    }
    let mid = slice.len() / 2;
    slice.select_nth_unstable_by(mid, |&a, &b| data[a * dim + axis].total_cmp(&data[b * dim + axis]));
    let value = data[slice[mid] * dim + axis];
    let left = build(data, dim, order, start, start + mid);
    let right = build(data, dim, order, start + mid, end);
    Node::Split { axis, value, left: Box::new(left), right: Box::new(right) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn matches_brute_force() {
        let mut r = crate::rng::stream(4, 0);
        let dim = 3;
        let data: Vec<f64> = (0..3000).map(|_| r.random::<f64>()).collect();
        let tree = KdTree::new(&data, dim);
        for _ in 0..20 {
            let q: Vec<f64> = (0..dim).map(|_| r.random::<f64>()).collect();
            let mut got = Vec::new();
            tree.for_each_within(&q, 0.04, |i, _| got.push(i));
            got.sort();
            let want: Vec<usize> = (0..1000).filter(|&i| dist2(tree.point(i), &q) <= 0.04).collect();
            assert_eq!(got, want);
            let (nn, d2) = tree.nearest(&q, None).unwrap();
            let best = (0..1000).map(|i| dist2(tree.point(i), &q)).fold(f64::INFINITY, f64::min);
            assert_eq!(d2, best);
            assert_eq!(dist2(tree.point(nn), &q), best);
        }
    }

    #[test]
    fn duplicates_do_not_recurse_forever() {
        let data = vec![0.5; 2 * 100];
        let tree = KdTree::new(&data, 2);
        let mut n = 0;
        tree.for_each_within(&[0.5, 0.5], 0.0, |_, _| n += 1);
        assert_eq!(n, 100);
    }
}
