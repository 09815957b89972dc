#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> impl FnMut() -> f64 {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    move || r.gen::<f64>()
}

pub mod classical;
