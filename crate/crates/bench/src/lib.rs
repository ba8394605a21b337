//! Shared fixtures for the criterion benches.

use gswf_core::catalog::majority;
use gswf_core::search::random_function;
use gswf_core::{BooleanFunction, Gswf};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seeded random table of arity `n`.
pub fn random_table(n: usize, seed: u64) -> BooleanFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_function(n, &mut rng).expect("valid arity")
}

pub fn condorcet(n: usize) -> Gswf {
    let m = majority(n).expect("odd n");
    Gswf::new(m.clone(), m.clone(), m).expect("same arity")
}
