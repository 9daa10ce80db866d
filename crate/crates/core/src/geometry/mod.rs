//! Linear algebra over `F₃` and the projective geometry `PG(k−1,3)`.

mod affine;
mod blocking;
pub mod gf3;
mod lines;
mod projective;

pub use affine::{enumerate_affine_targets, AffineSubspace};
pub use blocking::{
    affine_block_count, blocking_to_json, is_strength_blocking, is_strength_blocking_hyperplane, parse_blocking_json,
    BlockingVerdict, PointMultiset,
};
pub use gf3::{gf3_rank, Gf3Matrix};
pub use lines::{line_hit_probability, lines_count, random_lines_blocking, LinesMode, RandomLines, DEFAULT_MAX_ATTEMPTS};
pub use projective::{enumerate_lines, enumerate_points, gaussian_binomial, point_count, PointSpace, ProjectivePoint};
