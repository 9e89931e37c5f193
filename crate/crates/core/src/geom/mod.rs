//! Convex-polytope kernel.

mod cone;
pub mod corpus;
mod cover;
mod faces;
mod halfspace;
pub mod hull;
pub mod io;
mod motion;
pub mod planar;
mod polyconvex;
mod polytope;
pub mod section;

pub use cone::{Angle, AngleBudget, AngleMethod, Cone};
pub use cover::{cover_body, BodyCover};
pub use faces::{Face, FaceLattice};
pub use halfspace::{AxisBox, Halfspace};
pub use motion::{random_rotation, RigidMotion};
pub use polyconvex::{euler_polyconvex, Polyconvex};
pub use polytope::{difference_body, intersect, intersect_generic, minkowski_sum, HPolytope, VPolytope};

/// Global incidence tolerance.
pub const TAU: f64 = 1e-9;

/// Three-way sign of `x` under the incidence tolerance scaled by `scale`.
pub fn sign(x: f64, scale: f64) -> i8 {
    let t = TAU * scale.max(1.0);
    if x > t {
        1
    } else if x < -t {
        -1
    } else {
        0
    }
}

/// The single comparator for incidence decisions: `a ≤ b` up to tolerance.
pub fn leq(a: f64, b: f64, scale: f64) -> bool {
    sign(a - b, scale) <= 0
}

pub fn near_zero(x: f64, scale: f64) -> bool {
    sign(x, scale) == 0
}
