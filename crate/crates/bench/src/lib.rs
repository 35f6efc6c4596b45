//! Network families shared by the benchmarks.

use rcrn_core::{generate_random, RandomNetworkSpec, ReactionNetwork};

/// Square network with `size` species and reactions and at most two
/// species per complex.
pub fn square(size: usize, seed: u64) -> ReactionNetwork {
    let mut spec = RandomNetworkSpec::new(seed, size..=size, size..=size);
    spec.max_complex_size = 2;
    generate_random(&spec)
}

/// Small dense networks of the kind used for cross-checking.
pub fn small(count: u64) -> Vec<ReactionNetwork> {
    let spec = RandomNetworkSpec::new(0, 4..=8, 4..=8);
    (0..count).map(|s| generate_random(&spec.with_seed(s))).collect()
}
