//! Seeded random streams.
//!
//! Every run derives its generators from a single 64-bit seed. ChaCha8 is a
//! counter-based generator with 2^64 independent streams per seed, so the
//! search and the objective noise never share state:
//!
//! * stream [`SEARCH_STREAM`] drives the optimizer,
//! * stream [`NOISE_STREAM`] feeds noisy objectives.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEARCH_STREAM: u64 = 0;
pub const NOISE_STREAM: u64 = 1;

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
