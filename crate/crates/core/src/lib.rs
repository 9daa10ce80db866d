//! Generalized trifferent codes over `{0,1,2}` and their linear counterparts.
//!
//! A code `C ⊆ {0,1,2}^n` is *m-trifferent* when every three distinct words
//! triffer (take all three symbols) in at least `m` coordinates. The crate
//! provides verification and constructions for such codes, closed-form and
//! composed bounds on their maximum size `T(n,m)`, the geometry of `PG(k-1,3)`
//! used to study linear codes (strength-m strong blocking sets), and exact
//! branch-and-bound solvers for small parameters.

pub mod bounds;
pub mod error;
pub mod geometry;
pub mod linear;
pub mod rng;
pub mod search;
pub mod ternary;

pub use error::{Error, Result};
