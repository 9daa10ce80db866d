//! Closed-form bounds, their composition, and asymptotic rate curves.

mod closed_form;
mod compose;
mod curve;
mod entropy;
mod value;

pub use closed_form::*;
pub use compose::{best_bounds, BaseFacts, BestBounds};
pub use curve::{curve_csv, rate_row, RateRow};
pub use entropy::{binary_entropy, binomial, binomial_entropy_check, kl_bernoulli, log2_big};
pub use value::{log2_rational, BoundValue, Direction, RatePoint, LOG2_GUARD};
