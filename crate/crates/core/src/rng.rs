//! Deterministic seeding.
//!
//! Every generator takes a `u64` seed and drives a ChaCha8 stream, whose
//! output is stable across platforms and crate versions. Monte Carlo loops
//! derive one child seed per replicate with [`derive_seed`] so that serial
//! and parallel runs draw identical paths.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeriesRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeriesRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed for `(stream, index)` under a master seed.
pub fn derive_seed(master: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_seeds_are_distinct_and_stable() {
        let a = derive_seed(7, 0, 0);
        assert_eq!(a, derive_seed(7, 0, 0));
        assert_ne!(a, derive_seed(7, 0, 1));
        assert_ne!(a, derive_seed(7, 1, 0));
        assert_ne!(a, derive_seed(8, 0, 0));
    }
}
