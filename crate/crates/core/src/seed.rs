//! Named, seedable random streams.
//!
//! Every random draw in the crate comes from [`ChaCha8Rng`]. Independent
//! streams for parallel work are derived from one master seed by selecting
//! ChaCha stream `index` under that seed, so results never depend on how
//! work is scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream `index` under `master`.
pub fn stream(master: u64, index: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng
}

/// Packs a (group, item) pair into one stream index.
pub fn stream_index(group: u32, item: u32) -> u64 {
    (u64::from(group) << 32) | u64::from(item)
}
