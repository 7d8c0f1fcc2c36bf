//! Seeded randomness for instance generation.
//!
//! Every generator in the crate draws from SplitMix64 so that instances are
//! reproducible from a single `u64`. Batches of instances derive one seed per
//! index with [`derive_seed`].

use rand::{RngCore, SeedableRng};

pub use rand_xoshiro::SplitMix64;

/// Golden-ratio increment used to spread instance indices over seed space.
pub const SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Seed for instance `index` of a batch generated from `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    rng(seed.wrapping_add(index.wrapping_mul(SEED_STRIDE))).next_u64()
}
