//! Motion sampling, kinematic constants, Monte-Carlo checks of the global
//! and local kinematic formulas, and the exact decomposition of curvature
//! measures of intersections.

mod constants;
mod decomposition;
mod pkf;
mod sampling;

pub use constants::{
    ball_pair_integral, kinematic_constants, kinematic_constants_with, lens_intrinsic_volume, ConstantEntry, KinematicConstants,
    TEMPLATE_PAIRS,
};
pub use decomposition::{connecting_term, decompose, decomposition_check, DecompositionCheck};
pub use pkf::{pkf_lhs_mc, pkf_rhs, verify_pkf, LhsEstimate, PKFReport, PkfProblem, MAX_RESAMPLE_RATE};
pub use sampling::{sample_motion, MotionSample, MotionSampler};
