//! Computational integral geometry on polytopal and piecewise-linear inputs.
//!
//! The crate is organised bottom-up:
//!
//! - [`geom`]: exact convex-polytope kernel (H/V representations, face lattices,
//!   normal cones, support functions, caps, widths, Minkowski operations,
//!   intersections, Euler characteristic of polyconvex sets).
//! - [`dc`]: piecewise-linear DC functions, Clarke differentials, weak
//!   regularity certificates, aura algebra and the sets `nor_eps f`.
//! - [`curvature`]: external angles, intrinsic volumes, localized curvature
//!   measures and Steiner-formula cross-validation.
//! - [`kinematic`]: Haar motion sampling, the template solver for kinematic
//!   constants, Monte-Carlo kinematic formulas and the normal-cycle
//!   decomposition of `A ∩ γB`.
//! - [`content`]: covering/packing numbers, Minkowski content brackets,
//!   box-dimension fits and generators for the structured product sets.
//!
//! All geometric predicates route through the single incidence tolerance
//! [`geom::TAU`].

pub mod content;
pub mod curvature;
pub mod dc;
pub mod error;
pub mod geom;
pub mod kinematic;
pub mod linalg;
pub mod lp;
pub mod qp;
pub mod quad;
pub mod rng;

pub use error::{Error, Result};
pub use geom::{AxisBox, Cone, Face, FaceLattice, HPolytope, Halfspace, Polyconvex, RigidMotion, VPolytope};
pub use linalg::{Frame, Matrix, Vector};

/// Library version string, stamped into every run report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
