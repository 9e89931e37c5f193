//! Piecewise-linear DC functions, Clarke differentials, weak regularity and
//! the sets `nor_ε f`.

mod aura;
mod clarke;
mod complex;
mod dcfunction;
mod noreps;
mod plconvex;
mod regularity;
mod transversality;

pub use aura::{aura_min, aura_polytope, aura_sum_motion};
pub use clarke::{clarke_exact, clarke_superset, min_norm_clarke, subdiff_convex, ClarkeHull};
pub use complex::{refinement_cells, RefinementCell};
pub use dcfunction::{DCFunction, DcJson};
pub use noreps::{nor_eps, sample_polytope, NorEpsPiece, NorEpsSet};
pub use plconvex::{AffinePiece, PLConvex};
pub use regularity::{weak_regularity, RegularityCertificate, RegularityStatus};
pub use transversality::{eps0_bound, transversality_check, Eps0Bound, Transversality};
