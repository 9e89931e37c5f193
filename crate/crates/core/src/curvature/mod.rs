//! Curvature measures of polytopes and polyconvex sets.

mod angles;
mod ball;
mod measures;
mod profile;
mod region;
mod steiner;

pub use angles::{external_angle, internal_angle, ExternalAngle};
pub use ball::ball_intrinsic_volumes;
pub use measures::{curvature_measure, intrinsic_volumes, intrinsic_volumes_polyconvex, polyconvex_measure, CurvatureData};
pub use profile::CurvatureProfile;
pub use region::Region;
pub use steiner::{steiner_formula, steiner_volume, SteinerCheck};
