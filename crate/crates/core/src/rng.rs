//! Seeded randomness shared by the randomized constructions.
//!
//! Every construction takes a 64-bit seed. Attempt `i` draws from ChaCha8
//! stream `i` of that seed, so attempts are independent, can run in any order
//! and reproduce byte-identical output on every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Generator for attempt `attempt` of a run seeded with `seed`.
pub fn attempt_rng(seed: u64, attempt: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt);
    rng
}
