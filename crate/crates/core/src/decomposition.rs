//! Sum-of-binomials form of the mass-action steady-state polynomials.
//!
//! For a reaction `C_i <=> C_j` with monomials `m_i`, `m_j` the associated
//! binomial is `b = -k_ij*m_i + k_ji*m_j`, and every right-hand side is
//! `p_s = Σ c_s(rx) * b(rx)` with `c_s = coeff_s(reactant) - coeff_s(product)`.
//!
//! Rate symbols are indexed `2*i` (forward label of reaction `i`) and
//! `2*i + 1` (backward label), matching [`ReactionNetwork::rate_labels`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::network::{complex_power_product, ReactionNetwork, ReversibleReaction, SpeciesId};
use crate::poly::{Monomial, SymbolicPolynomial};

pub fn forward_rate_symbol(rx: &ReversibleReaction) -> usize {
    2 * rx.index
}

pub fn backward_rate_symbol(rx: &ReversibleReaction) -> usize {
    2 * rx.index + 1
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `-k_fwd * m_reactant + k_bwd * m_product`; the zero polynomial for a
/// degenerate reaction.
pub fn associated_binomial(rx: &ReversibleReaction) -> SymbolicPolynomial {
    if rx.is_degenerate() {
        return SymbolicPolynomial::zero();
    }
    let fwd = Monomial::rate(forward_rate_symbol(rx)).mul(&complex_power_product(&rx.reactant));
    let bwd = Monomial::rate(backward_rate_symbol(rx)).mul(&complex_power_product(&rx.product));
    let mut b = SymbolicPolynomial::term(-BigRational::one(), fwd);
    b.add_term(bwd, BigRational::one());
    b
}

/// Net consumption of `s` by the reaction: reactant minus product coefficient.
pub fn species_coefficient(rx: &ReversibleReaction, s: SpeciesId) -> i64 {
    i64::from(rx.reactant.coefficient(s)) - i64::from(rx.product.coefficient(s))
}

/// Binomial and nonzero species coefficients of one non-degenerate reaction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialEntry {
    pub binomial: SymbolicPolynomial,
    pub coeffs: BTreeMap<SpeciesId, i64>,
}

/// Per-reaction binomials; degenerate reactions are absent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BinomialTable {
    pub entries: BTreeMap<usize, BinomialEntry>,
}

impl BinomialTable {
    pub fn build(net: &ReactionNetwork) -> Self {
        let entries = net
            .nondegenerate_reactions()
            .map(|rx| {
                let coeffs = rx
                    .reactant
                    .species()
                    .chain(rx.product.species())
                    .map(|s| (s, species_coefficient(rx, s)))
                    .filter(|&(_, c)| c != 0)
                    .collect();
                (rx.index, BinomialEntry { binomial: associated_binomial(rx), coeffs })
            })
            .collect();
        Self { entries }
    }
}

/// `p_1, ..., p_n` assembled from the binomial table.
pub fn steady_state_polynomials(net: &ReactionNetwork) -> Vec<SymbolicPolynomial> {
    let table = BinomialTable::build(net);
    let mut ps = vec![SymbolicPolynomial::zero(); net.num_species()];
    for entry in table.entries.values() {
        for (&s, &c) in &entry.coeffs {
            ps[s.0] = &ps[s.0] + &entry.binomial.scale(&int(c));
        }
    }
    ps
}

/// Right-hand sides built straight from mass-action kinetics: each direction
/// of each reaction fires at `k * m_source` and changes every species by
/// `coeff(target) - coeff(source)`. No binomials are involved.
pub fn mass_action_rhs(net: &ReactionNetwork) -> Vec<SymbolicPolynomial> {
    let mut rhs = vec![SymbolicPolynomial::zero(); net.num_species()];
    for rx in net.reactions() {
        let directions = [
            (forward_rate_symbol(rx), &rx.reactant, &rx.product),
            (backward_rate_symbol(rx), &rx.product, &rx.reactant),
        ];
        for (rate, source, target) in directions {
            let flux = Monomial::rate(rate).mul(&complex_power_product(source));
            for s in net.species_ids() {
                let change = i64::from(target.coefficient(s)) - i64::from(source.coefficient(s));
                if change != 0 {
                    rhs[s.0].add_term(flux.clone(), int(change));
                }
            }
        }
    }
    rhs
}

/// Checks that the binomial decomposition reproduces the mass-action ODEs.
pub fn verify_decomposition(net: &ReactionNetwork) -> bool {
    steady_state_polynomials(net) == mass_action_rhs(net)
}
