//! Seeded, splittable random number generation.
//!
//! Every random draw in the crate flows from a [`SimRng`]. Substreams are
//! ChaCha stream ids under a shared key, so `(seed, label)` pairs give
//! independent, reproducible sequences.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for substream `label` of `seed`.
pub fn substream(seed: u64, label: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(label);
    rng
}

/// Derives a child generator from a parent, consuming one draw.
pub fn fork(parent: &mut dyn RngCore, label: u64) -> SimRng {
    substream(parent.next_u64(), label)
}

/// Uniform on `[0, 1)` with 53 random bits.
pub fn uniform(rng: &mut dyn RngCore) -> f64 {
    rng.random::<f64>()
}
