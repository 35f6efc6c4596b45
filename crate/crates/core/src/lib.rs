//! Unconditional binomiality of reversible chemical reaction networks.
//!
//! Two independent deciders are provided and cross-checked:
//!
//! * [`matrix`]: reduced row echelon form of the binomial coefficient matrix
//!   over exact rationals; binomial iff every reduced row has at most one
//!   nonzero entry.
//! * [`graph`]: edge rewriting on the modified species–reaction graph;
//!   binomial iff every final component is a lone species or a single
//!   species–reaction pair.
//!
//! Networks come from a small text format ([`parser`]), and [`harness`]
//! runs either or both methods, generates random networks and benchmarks
//! corpora.

pub mod decomposition;
pub mod error;
pub mod graph;
pub mod harness;
pub mod matrix;
pub mod network;
pub mod parser;
pub mod poly;
pub mod random;
pub mod rational;
pub mod report;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use decomposition::{
    associated_binomial, species_coefficient, steady_state_polynomials, verify_decomposition,
    BinomialTable,
};
pub use error::{CorpusError, ModelLoadError, NetworkError, ParseError, ReportError};
pub use graph::{
    create_graph, graph_to_matrix, is_unconditionally_binomial_graph, transform, ComponentSummary,
    SRGraph,
};
pub use harness::{analyze, AnalysisReport, Method};
pub use matrix::{
    build_matrix, is_unconditionally_binomial_matrix, rref, BinomialCoefficientMatrix, Rational,
    RationalMatrix, RrefResult,
};
pub use network::{complex_monomial, Complex, ReactionNetwork, ReversibleReaction, SpeciesId};
pub use parser::{parse_batch, parse_batch_str, parse_network, parse_network_with, Batch, ParseOptions};
pub use poly::{Monomial, SymbolicPolynomial};
pub use random::{generate_random, RandomNetworkSpec};

/// Outcome of a binomiality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    UnconditionallyBinomial,
    NotUnconditionallyBinomial,
}

impl Verdict {
    pub fn is_binomial(self) -> bool {
        self == Verdict::UnconditionallyBinomial
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::UnconditionallyBinomial => "UnconditionallyBinomial",
            Verdict::NotUnconditionallyBinomial => "NotUnconditionallyBinomial",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
