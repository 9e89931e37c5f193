use rand::Rng as _;

use crate::geom::{random_rotation, AxisBox, HPolytope, RigidMotion};
use crate::linalg::Vector;
use crate::rng::Rng;

/// A motion `γ` drawn as Haar rotation times uniform translation in a
/// window, with the window volume as importance weight.
#[derive(Clone, Debug)]
pub struct MotionSample {
    pub motion: RigidMotion,
    pub weight: f64,
}

/// Draws motions of `B` relative to `A` such that every `γ` with
/// `A ∩ γB ≠ ∅` lies in the sampled window.
#[derive(Clone, Debug)]
pub struct MotionSampler {
    a_box: AxisBox,
    b_points: Vec<Vector>,
}

impl MotionSampler {
    /// `b_points` must have `B` in their convex hull.
    pub fn new(a_box: AxisBox, b_points: Vec<Vector>) -> MotionSampler {
        MotionSampler { a_box, b_points }
    }

    pub fn dim(&self) -> usize {
        self.a_box.dim()
    }

    /// `bbox(A) − bbox(R·B)`, which contains `{t : A ∩ (RB + t) ≠ ∅}`.
    pub fn window(&self, rotation: &crate::linalg::Matrix) -> AxisBox {
        let d = self.dim();
        let moved: Vec<Vector> = self.b_points.iter().map(|p| rotation * p).collect();
        let rb = AxisBox::of_points(&moved);
        AxisBox { lo: (0..d).map(|i| self.a_box.lo[i] - rb.hi[i]).collect(), hi: (0..d).map(|i| self.a_box.hi[i] - rb.lo[i]).collect() }
    }

    pub fn sample(&self, r: &mut Rng) -> MotionSample {
        let d = self.dim();
        let rotation = random_rotation(r, d);
        let w = self.window(&rotation);
        let t = Vector::from_iterator(d, (0..d).map(|i| w.lo[i] + (w.hi[i] - w.lo[i]) * r.random::<f64>()));
        MotionSample { weight: w.volume(), motion: RigidMotion { rotation, translation: t } }
    }
}

pub fn sample_motion(a: &HPolytope, b: &HPolytope, r: &mut Rng) -> MotionSample {
    MotionSampler::new(a.bounding_box(), b.vertices().to_vec()).sample(r)
}
