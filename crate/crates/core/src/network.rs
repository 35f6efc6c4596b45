//! Reaction-network data model.
//!
//! A [`ReactionNetwork`] is an ordered list of species together with an
//! ordered list of reversible reactions `reactant <=> product`. Every
//! reaction carries two symbolic rate-constant labels; they are never
//! evaluated.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::NetworkError;
use crate::poly::{Monomial, SymbolicPolynomial};

/// A species of the network, identified by its position in the species list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpeciesId(pub usize);

impl SpeciesId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Returns true if `name` is a valid species token: a letter followed by
/// letters, digits or underscores.
pub fn is_valid_species_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A formal non-negative integer combination of species.
///
/// Zero coefficients are never stored. The empty complex is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Complex {
    coefficients: BTreeMap<SpeciesId, u32>,
}

impl Complex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a complex from `(species, coefficient)` pairs. Repeated
    /// species are summed and zero coefficients dropped. Returns `None` on
    /// `u32` overflow.
    pub fn from_terms<I>(terms: I) -> Option<Self>
    where
        I: IntoIterator<Item = (SpeciesId, u32)>,
    {
        let mut coefficients = BTreeMap::new();
        for (s, c) in terms {
            if c == 0 {
                continue;
            }
            let slot = coefficients.entry(s).or_insert(0u32);
            *slot = slot.checked_add(c)?;
        }
        Some(Self { coefficients })
    }

    pub fn coefficient(&self, s: SpeciesId) -> u32 {
        self.coefficients.get(&s).copied().unwrap_or(0)
    }

    /// Iterates `(species, coefficient)` in ascending species order.
    pub fn iter(&self) -> impl Iterator<Item = (SpeciesId, u32)> + '_ {
        self.coefficients.iter().map(|(&s, &c)| (s, c))
    }

    pub fn species(&self) -> impl Iterator<Item = SpeciesId> + '_ {
        self.coefficients.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    /// Multiset union of two complexes. Returns `None` on `u32` overflow.
    pub fn union(&self, other: &Complex) -> Option<Complex> {
        Complex::from_terms(self.iter().chain(other.iter()))
    }
}

/// The monomial `∏ x_s^{coeff(s)}` of a complex, with coefficient 1. The
/// empty complex gives the constant 1.
pub fn complex_monomial(c: &Complex) -> SymbolicPolynomial {
    SymbolicPolynomial::monomial(complex_power_product(c))
}

pub(crate) fn complex_power_product(c: &Complex) -> Monomial {
    let len = c.species().last().map_or(0, |s| s.0 + 1);
    let mut exps = vec![0u32; len];
    for (s, k) in c.iter() {
        exps[s.0] = k;
    }
    Monomial::new(vec![], exps)
}

/// A reversible reaction `reactant <=> product` with forward and backward
/// rate-constant labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReversibleReaction {
    pub index: usize,
    pub reactant: Complex,
    pub product: Complex,
    pub forward_label: String,
    pub backward_label: String,
}

impl ReversibleReaction {
    /// A reaction whose two complexes coincide. Its associated binomial is
    /// zero, so it contributes neither a matrix column nor a graph vertex.
    pub fn is_degenerate(&self) -> bool {
        self.reactant == self.product
    }

    /// The same reaction read right to left, with the labels swapped.
    pub fn reversed(&self) -> ReversibleReaction {
        ReversibleReaction {
            index: self.index,
            reactant: self.product.clone(),
            product: self.reactant.clone(),
            forward_label: self.backward_label.clone(),
            backward_label: self.forward_label.clone(),
        }
    }
}

/// A reversible chemical reaction network.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReactionNetwork {
    species: Vec<String>,
    reactions: Vec<ReversibleReaction>,
}

impl ReactionNetwork {
    /// Validates and assembles a network. Reaction indices are rewritten to
    /// match their position.
    pub fn new(
        species: Vec<String>,
        mut reactions: Vec<ReversibleReaction>,
    ) -> Result<Self, NetworkError> {
        if reactions.is_empty() {
            return Err(NetworkError::NoReactions);
        }
        let mut seen = HashSet::new();
        for name in &species {
            if !is_valid_species_name(name) {
                return Err(NetworkError::InvalidSpeciesName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(NetworkError::DuplicateSpecies(name.clone()));
            }
        }
        let mut labels = HashSet::new();
        for (i, rx) in reactions.iter_mut().enumerate() {
            rx.index = i;
            for s in rx.reactant.species().chain(rx.product.species()) {
                if s.0 >= species.len() {
                    return Err(NetworkError::UnknownSpecies { reaction: i, species: s.0 });
                }
            }
            for label in [&rx.forward_label, &rx.backward_label] {
                if !labels.insert(label.clone()) {
                    return Err(NetworkError::DuplicateLabel(label.clone()));
                }
            }
        }
        Ok(Self { species, reactions })
    }

    pub fn species_names(&self) -> &[String] {
        &self.species
    }

    pub fn species_name(&self, s: SpeciesId) -> &str {
        &self.species[s.0]
    }

    pub fn species_ids(&self) -> impl Iterator<Item = SpeciesId> {
        (0..self.species.len()).map(SpeciesId)
    }

    pub fn species_by_name(&self, name: &str) -> Option<SpeciesId> {
        self.species.iter().position(|n| n == name).map(SpeciesId)
    }

    pub fn reactions(&self) -> &[ReversibleReaction] {
        &self.reactions
    }

    pub fn num_species(&self) -> usize {
        self.species.len()
    }

    pub fn num_reactions(&self) -> usize {
        self.reactions.len()
    }

    pub fn degenerate_reactions(&self) -> impl Iterator<Item = &ReversibleReaction> {
        self.reactions.iter().filter(|rx| rx.is_degenerate())
    }

    pub fn nondegenerate_reactions(&self) -> impl Iterator<Item = &ReversibleReaction> {
        self.reactions.iter().filter(|rx| !rx.is_degenerate())
    }

    /// Rate-constant labels in symbol order: forward then backward label of
    /// each reaction.
    pub fn rate_labels(&self) -> Vec<String> {
        self.reactions
            .iter()
            .flat_map(|rx| [rx.forward_label.clone(), rx.backward_label.clone()])
            .collect()
    }

    pub(crate) fn write_complex(&self, f: &mut impl fmt::Write, c: &Complex) -> fmt::Result {
        if c.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, coeff)) in c.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if coeff != 1 {
                write!(f, "{} ", coeff)?;
            }
            f.write_str(self.species_name(s))?;
        }
        Ok(())
    }

    /// Renders one reaction in DSL syntax with explicit labels.
    pub fn reaction_to_string(&self, rx: &ReversibleReaction) -> String {
        let mut out = String::new();
        self.write_complex(&mut out, &rx.reactant).unwrap();
        out.push_str(&format!(" <=>[{}][{}] ", rx.forward_label, rx.backward_label));
        self.write_complex(&mut out, &rx.product).unwrap();
        out
    }
}

/// Prints the network as DSL text, one reaction per line. Parsing the output
/// yields the same network.
impl fmt::Display for ReactionNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rx in &self.reactions {
            writeln!(f, "{}", self.reaction_to_string(rx))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(terms: &[(usize, u32)]) -> Complex {
        Complex::from_terms(terms.iter().map(|&(s, k)| (SpeciesId(s), k))).unwrap()
    }

    fn rx(reactant: Complex, product: Complex, f: &str, b: &str) -> ReversibleReaction {
        ReversibleReaction {
            index: 0,
            reactant,
            product,
            forward_label: f.into(),
            backward_label: b.into(),
        }
    }

    #[test]
    fn complex_sums_duplicates_and_drops_zeros() {
        let cx = c(&[(0, 1), (1, 0), (0, 2)]);
        assert_eq!(cx.coefficient(SpeciesId(0)), 3);
        assert_eq!(cx.coefficient(SpeciesId(1)), 0);
        assert_eq!(cx.len(), 1);
        assert!(Complex::from_terms([(SpeciesId(0), u32::MAX), (SpeciesId(0), 1)]).is_none());
    }

    #[test]
    fn network_rejects_bad_input() {
        let names = vec!["A".to_string(), "B".to_string()];
        assert!(matches!(
            ReactionNetwork::new(names.clone(), vec![]),
            Err(NetworkError::NoReactions)
        ));
        let r = rx(c(&[(0, 1)]), c(&[(2, 1)]), "k1", "k2");
        assert!(matches!(
            ReactionNetwork::new(names.clone(), vec![r]),
            Err(NetworkError::UnknownSpecies { .. })
        ));
        let r1 = rx(c(&[(0, 1)]), c(&[(1, 1)]), "k1", "k2");
        let r2 = rx(c(&[(1, 1)]), c(&[(0, 2)]), "k2", "k3");
        assert!(matches!(
            ReactionNetwork::new(names.clone(), vec![r1.clone(), r2]),
            Err(NetworkError::DuplicateLabel(l)) if l == "k2"
        ));
        assert!(matches!(
            ReactionNetwork::new(vec!["A".into(), "A".into()], vec![r1.clone()]),
            Err(NetworkError::DuplicateSpecies(_))
        ));
        assert!(matches!(
            ReactionNetwork::new(vec!["1A".into(), "B".into()], vec![r1]),
            Err(NetworkError::InvalidSpeciesName(_))
        ));
    }

    #[test]
    fn reversal_swaps_sides_and_labels() {
        let r = rx(c(&[(0, 1)]), c(&[(1, 2)]), "kf", "kb");
        let back = r.reversed();
        assert_eq!(back.reactant, r.product);
        assert_eq!(back.forward_label, "kb");
        assert_eq!(back.reversed(), r);
    }

    #[test]
    fn complex_monomials() {
        let ab = complex_monomial(&c(&[(0, 1), (1, 1)]));
        assert_eq!(ab, SymbolicPolynomial::monomial(Monomial::new(vec![], vec![1, 1])));
        let ad2 = complex_monomial(&c(&[(0, 1), (3, 2)]));
        assert_eq!(ad2, SymbolicPolynomial::monomial(Monomial::new(vec![], vec![1, 0, 0, 2])));
        assert_eq!(
            complex_monomial(&Complex::empty()),
            SymbolicPolynomial::monomial(Monomial::one())
        );
    }

    #[test]
    fn species_names() {
        assert!(is_valid_species_name("A"));
        assert!(is_valid_species_name("ATP_2"));
        assert!(!is_valid_species_name("_A"));
        assert!(!is_valid_species_name(""));
        assert!(!is_valid_species_name("A-B"));
    }
}
