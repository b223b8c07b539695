//! Seeded counter-based substreams.
//!
//! Every stochastic operation in this crate takes an explicit `u64` seed and
//! derives one ChaCha substream per logical unit of work (sample, replicate,
//! trial). Work units can then run in any order and on any number of threads
//! without changing a single drawn number.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// RNG for one work unit, fully determined by `(seed, stream)`.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Two-level substream, e.g. `(seed, n, trial)` for per-n trial batches.
pub fn substream2(seed: u64, major: u64, minor: u64) -> ChaCha8Rng {
    // Distinct (major, minor) pairs map to distinct streams.
    substream(seed, major.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ minor)
}
