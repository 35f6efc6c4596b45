use std::path::PathBuf;

use thiserror::Error;

/// Violations of the [`ReactionNetwork`](crate::ReactionNetwork) invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("network has no reactions")]
    NoReactions,
    #[error("invalid species name `{0}`")]
    InvalidSpeciesName(String),
    #[error("species `{0}` declared twice")]
    DuplicateSpecies(String),
    #[error("reaction {reaction} references unknown species #{species}")]
    UnknownSpecies { reaction: usize, species: usize },
    #[error("rate-constant label `{0}` used more than once")]
    DuplicateLabel(String),
}

/// A DSL syntax or validation error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self { line, column, message: message.into() }
    }
}

/// Failure to load one model of a batch.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("model `{model}`: {error}")]
pub struct ModelLoadError {
    pub model: String,
    pub error: ParseError,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
