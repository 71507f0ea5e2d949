//! Deterministic seed derivation.
//!
//! Every stochastic step derives its generator from a parent seed and a
//! stream of integer keys, so work can be split across threads without
//! changing a single output byte.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed for `(parent, keys...)`.
pub fn derive_seed(parent: u64, keys: &[u64]) -> u64 {
    keys.iter().fold(splitmix64(parent), |acc, &k| splitmix64(acc ^ splitmix64(k)))
}

pub fn rng_from(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn child_rng(parent: u64, keys: &[u64]) -> Rng {
    rng_from(derive_seed(parent, keys))
}

/// Domain tags keep streams for different purposes apart.
pub mod stream {
    pub const RECORD: u64 = 1;
    pub const SCENARIO: u64 = 2;
    pub const NOISE: u64 = 3;
    pub const SIGMA: u64 = 4;
    pub const INIT: u64 = 5;
    pub const SHUFFLE: u64 = 6;
    pub const DROPOUT: u64 = 7;
    pub const AUGMENT: u64 = 8;
    pub const SPLIT: u64 = 9;
    pub const EVAL_NOISE: u64 = 10;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivation_is_stable_and_key_sensitive() {
        assert_eq!(derive_seed(7, &[1, 2]), derive_seed(7, &[1, 2]));
        assert_ne!(derive_seed(7, &[1, 2]), derive_seed(7, &[2, 1]));
        assert_ne!(derive_seed(7, &[1]), derive_seed(8, &[1]));
    }
}
