//! Covering and packing numbers, Minkowski-content brackets, box-dimension
//! fits and generators for the structured product sets `Σ_{A,B}`, `T_K`,
//! `nor_ε f` and `graph ∂f`.

mod covering;
mod curve;
mod generators;
mod kdtree;
mod pieces;

pub use covering::{anchored_cover, covering_number, covering_numbers, greedy_net, product_cloud, PointCloud};
pub use curve::{content_curve, eps_grid, estimate_content, ContentCurve, ContentEstimate, CurveRow, ScaleContent, DEFAULT_SCALES};
pub use generators::{graph_clarke_set, nor_eps_content, nor_eps_set, piece_content, piece_curve, sigma_set, tk_set};
pub use kdtree::{dist2, KdTree};
pub use pieces::{Factor, PieceSet, ProductPiece, SphericalPatch};
