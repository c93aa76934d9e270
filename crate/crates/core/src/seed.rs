//! Seed derivation.
//!
//! Every random choice in the crate flows from a single `u64` seed. Child
//! seeds are drawn from SplitMix64 so that a parent seed and an index fully
//! determine the child, independent of evaluation order.

use rand::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// Derives the `index`-th child seed of `parent`.
pub fn child_seed(parent: u64, index: u64) -> u64 {
    let mut rng =
        SplitMix64::seed_from_u64(parent ^ index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    rng.next_u64()
}

/// A SplitMix64 stream seeded with `seed`.
pub fn splitmix(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}
