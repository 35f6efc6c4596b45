//! Seeded random reversible networks for cross-checking and benchmarks.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::{Complex, ReactionNetwork, ReversibleReaction, SpeciesId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomNetworkSpec {
    pub seed: u64,
    pub species: RangeInclusive<usize>,
    pub reactions: RangeInclusive<usize>,
    pub max_coefficient: u32,
    /// Upper bound on the number of distinct species in one complex.
    pub max_complex_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidSpec {
    #[error("species range must be non-empty and start at 1 or more")]
    Species,
    #[error("reaction range must be non-empty and start at 1 or more")]
    Reactions,
    #[error("max coefficient must be at least 1")]
    Coefficient,
    #[error("max complex size must be at least 1")]
    ComplexSize,
}

impl RandomNetworkSpec {
    pub fn new(seed: u64, species: RangeInclusive<usize>, reactions: RangeInclusive<usize>) -> Self {
        Self { seed, species, reactions, max_coefficient: 3, max_complex_size: 3 }
    }

    pub fn validate(&self) -> Result<(), InvalidSpec> {
        if self.species.is_empty() || *self.species.start() == 0 {
            return Err(InvalidSpec::Species);
        }
        if self.reactions.is_empty() || *self.reactions.start() == 0 {
            return Err(InvalidSpec::Reactions);
        }
        if self.max_coefficient == 0 {
            return Err(InvalidSpec::Coefficient);
        }
        if self.max_complex_size == 0 {
            return Err(InvalidSpec::ComplexSize);
        }
        Ok(())
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }
}

/// One side of a reaction under construction. `pinned` species were placed
/// to guarantee coverage and are never removed.
#[derive(Default)]
struct Side {
    terms: BTreeMap<usize, u32>,
    pinned: Vec<usize>,
}

/// Draws a network from `spec`. Deterministic per seed; every species occurs
/// in some complex and no reaction is degenerate.
///
/// The species count is capped at `2 * reactions * max_complex_size`, the
/// most species that can occur. Species are named `S1, S2, ...` in order of
/// first appearance.
///
/// # Panics
///
/// If `spec` fails [`RandomNetworkSpec::validate`].
pub fn generate_random(spec: &RandomNetworkSpec) -> ReactionNetwork {
    spec.validate().expect("invalid random network spec");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let r = rng.gen_range(spec.reactions.clone());
    let n = rng.gen_range(spec.species.clone()).min(2 * r * spec.max_complex_size);
    let coeff = |rng: &mut ChaCha8Rng| rng.gen_range(1..=spec.max_coefficient);

    let mut sides: Vec<Side> = (0..2 * r).map(|_| Side::default()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut slots: Vec<usize> = (0..2 * r).collect();
    slots.shuffle(&mut rng);
    for (k, &s) in order.iter().enumerate() {
        let side = &mut sides[slots[k % slots.len()]];
        side.terms.insert(s, coeff(&mut rng));
        side.pinned.push(s);
    }
    for side in &mut sides {
        let target = rng.gen_range(side.terms.len()..=spec.max_complex_size.min(n));
        while side.terms.len() < target {
            let s = rng.gen_range(0..n);
            side.terms.entry(s).or_insert_with(|| coeff(&mut rng));
        }
    }
    for j in 0..r {
        let (left, right) = sides.split_at_mut(2 * j + 1);
        let (reactant, product) = (&mut left[2 * j], &mut right[0]);
        if reactant.terms == product.terms {
            break_tie(reactant, product, n, &mut rng);
        }
    }

    // rename species by first appearance
    let mut rename = vec![usize::MAX; n];
    let mut next = 0;
    for side in &sides {
        for &s in side.terms.keys() {
            if rename[s] == usize::MAX {
                rename[s] = next;
                next += 1;
            }
        }
    }
    let to_complex = |side: &Side| {
        Complex::from_terms(side.terms.iter().map(|(&s, &c)| (SpeciesId(rename[s]), c)))
            .expect("coefficients within u32")
    };
    let reactions = (0..r)
        .map(|j| ReversibleReaction {
            index: j,
            reactant: to_complex(&sides[2 * j]),
            product: to_complex(&sides[2 * j + 1]),
            forward_label: format!("kf{}", j + 1),
            backward_label: format!("kb{}", j + 1),
        })
        .collect();
    let names = (1..=next).map(|i| format!("S{i}")).collect();
    ReactionNetwork::new(names, reactions).expect("generated network is valid")
}

/// Makes two equal sides differ without touching pinned species.
fn break_tie(reactant: &mut Side, product: &mut Side, n: usize, rng: &mut ChaCha8Rng) {
    // Each species is pinned to at most one side, so a shared species is
    // unpinned on at least one of them.
    let shared: Vec<usize> = product.terms.keys().copied().collect();
    for s in shared {
        if !product.pinned.contains(&s) {
            product.terms.remove(&s);
            return;
        }
        if !reactant.pinned.contains(&s) {
            reactant.terms.remove(&s);
            return;
        }
    }
    // both sides empty
    product.terms.insert(rng.gen_range(0..n), 1);
}
