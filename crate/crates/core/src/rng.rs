//! Seeded random streams. Every stochastic routine draws from a ChaCha
//! stream derived from a user seed, so serial and parallel runs agree.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `(generation, index)` under `seed`.
pub fn stream(seed: u64, generation: u64, index: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((generation << 32) | (index & 0xFFFF_FFFF));
    rng
}
