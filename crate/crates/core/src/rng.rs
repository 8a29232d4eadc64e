//! Seed derivation for reproducible experiments.
//!
//! Every random stream is `ChaCha8Rng::seed_from_u64(seed)` with its stream
//! id set to a caller-chosen index (trial number, prune iteration, ...).
//! Streams with distinct indices are independent, so work can be split
//! across threads without changing any result.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Nested stream: a fresh seed drawn from `(seed, outer)`, then `inner`.
pub fn sub_rng(seed: u64, outer: u64, inner: u64) -> ChaCha8Rng {
    use rand::RngCore;
    let derived = trial_rng(seed, outer).next_u64();
    trial_rng(derived, inner)
}
