//! Exact searches: largest m-trifferent codes and smallest strong blocking sets.

mod cover;
mod nonlinear;
mod outcome;

pub use cover::{
    build_cover_instance, export_lp, lp_text, min_blocking_exact, tl_from_blocking, BlockingOptima, BlockingOptions,
    CoverInstance, LinearFact,
};
pub use nonlinear::{max_trifferent_exact, max_trifferent_slice, TrifferentOptions, MAX_EXACT_LEN};
pub use outcome::{OutcomeSummary, SearchOutcome};
