//! Seeded random streams.
//!
//! Every consumer of randomness gets its own ChaCha stream derived from the
//! user seed, so changing e.g. the split does not perturb initialization.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub(crate) enum Stream {
    Init = 0,
    Shuffle = 1,
    Split = 2,
    Data = 3,
}

pub(crate) fn seeded(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}
