//! Words and codes over `{0,1,2}`: trifference checks, the symmetry group,
//! the elementary recursions (lift, deletion, puncturing) and the alteration
//! construction.

mod code;
mod construct;
mod io;
mod word;

pub use code::{
    apply_symmetry, delete_coordinates, is_m_trifferent, min_triple_trifference, puncture_majority,
    repetition_lift, translate, TernaryCode, TrifferenceReport, Triple, Verdict,
};
pub use construct::{alteration_construct, alteration_sample_size, alteration_target_size, Alteration};
pub use io::{format_code, parse_code};
pub use word::{triffer_count, triffer_positions, TernaryWord};
