use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Result, VibroError};
use crate::seeding::{child_rng, stream};

/// Record indices of each split, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splits {
    pub train: Vec<usize>,
    pub validation: Vec<usize>,
    pub test: Vec<usize>,
}

/// Partitions `0..n` by a seeded permutation. Train and validation sizes
/// are rounded; the test split takes the rest.
pub fn split_indices(n: usize, ratios: [f64; 3], seed: u64) -> Result<Splits> {
    let n_train = (n as f64 * ratios[0]).round() as usize;
    let n_val = (n as f64 * ratios[1]).round() as usize;
    if n_train == 0 || n_val == 0 || n_train + n_val >= n {
        return Err(VibroError::config(
            "split_ratios",
            format!("{ratios:?} leaves an empty split for {n} records"),
        ));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut child_rng(seed, &[stream::SPLIT]));
    let sorted = |s: &[usize]| {
        let mut v = s.to_vec();
        v.sort_unstable();
        v
    };
    Ok(Splits {
        train: sorted(&order[..n_train]),
        validation: sorted(&order[n_train..n_train + n_val]),
        test: sorted(&order[n_train + n_val..]),
    })
}
