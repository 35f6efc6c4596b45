//! Running the two deciders, cross-checking them, and benchmarking corpora.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::CorpusError;
use crate::graph::{describe_component, graph_method, GraphVerdict, SRGraph};
use crate::matrix::{matrix_method, reaction_label, violating_species, MatrixDump, MatrixVerdict};
use crate::network::ReactionNetwork;
use crate::parser::{parse_batch, ParseOptions};
use crate::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Matrix,
    Graph,
    Both,
}

impl Method {
    fn runs_matrix(self) -> bool {
        matches!(self, Method::Matrix | Method::Both)
    }

    fn runs_graph(self) -> bool {
        matches!(self, Method::Graph | Method::Both)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Matrix => "matrix",
            Method::Graph => "graph",
            Method::Both => "both",
        })
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "matrix" => Ok(Method::Matrix),
            "graph" => Ok(Method::Graph),
            "both" => Ok(Method::Both),
            other => Err(format!("unknown method `{other}` (expected matrix, graph or both)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDiagnostics {
    pub verdict: Verdict,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub violating_rows: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDiagnostics {
    pub verdict: Verdict,
    pub marked_species: Vec<String>,
    pub skipped_reactions: Vec<String>,
    /// Every component of the final graph, as `{species | reactions}`.
    pub components: Vec<String>,
    pub violating_components: Vec<String>,
    pub isolated_reactions: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixDiagnostics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphDiagnostics>,
    pub degenerate_reactions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub model: String,
    pub method: Method,
    pub verdict: Verdict,
    pub species: usize,
    pub reactions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_matrix_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_graph_ms: Option<f64>,
    /// Present iff both methods ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    pub diagnostics: Diagnostics,
}

impl AnalysisReport {
    /// Matrix time over graph time, when both ran.
    pub fn speedup(&self) -> Option<f64> {
        Some(self.t_matrix_ms? / self.t_graph_ms?)
    }
}

/// The two methods returned different verdicts. This is always a bug.
#[derive(Clone, Debug, Error)]
#[error("model `{}`: matrix and graph verdicts disagree", report.model)]
pub struct Disagreement {
    pub report: Box<AnalysisReport>,
    pub rref: MatrixDump,
    pub final_graph_dot: String,
}

fn millis(d: Duration) -> f64 {
    d.as_nanos() as f64 / 1e6
}

fn matrix_diagnostics(net: &ReactionNetwork, rows: usize, cols: usize, rank: usize, v: &MatrixVerdict) -> MatrixDiagnostics {
    MatrixDiagnostics {
        verdict: v.verdict,
        rank,
        rows,
        cols,
        violating_rows: violating_species(net, v),
    }
}

fn graph_diagnostics(g: &SRGraph, skipped: Vec<String>, v: &GraphVerdict) -> GraphDiagnostics {
    let comps = &v.summary.components;
    GraphDiagnostics {
        verdict: v.verdict,
        marked_species: (0..g.num_species())
            .filter(|&s| g.is_marked(s))
            .map(|s| g.species_names()[s].clone())
            .collect(),
        skipped_reactions: skipped,
        components: comps.iter().map(|c| describe_component(g, c)).collect(),
        violating_components: v
            .violating_components
            .iter()
            .map(|&i| describe_component(g, &comps[i]))
            .collect(),
        isolated_reactions: v
            .isolated_reactions
            .iter()
            .map(|&r| g.reaction_names()[r].clone())
            .collect(),
    }
}

/// Runs the requested method(s) on a parsed network. Timings cover the
/// algorithms only. When both run, their verdicts must agree.
pub fn analyze(model: &str, net: &ReactionNetwork, method: Method) -> Result<AnalysisReport, Disagreement> {
    let mut diagnostics = Diagnostics {
        degenerate_reactions: net.degenerate_reactions().map(|rx| reaction_label(rx.index)).collect(),
        ..Default::default()
    };
    let mut t_matrix_ms = None;
    let mut t_graph_ms = None;
    let mut rref_dump = None;
    let mut final_dot = None;

    if method.runs_matrix() {
        let start = Instant::now();
        let (bcm, reduced, v) = matrix_method(net);
        let elapsed = start.elapsed();
        t_matrix_ms = Some(millis(elapsed));
        diagnostics.matrix = Some(matrix_diagnostics(net, bcm.rows(), bcm.cols(), reduced.rank, &v));
        if method == Method::Both {
            rref_dump = Some(MatrixDump::of_rref(&bcm, &reduced));
        }
    }
    if method.runs_graph() {
        let start = Instant::now();
        let (g, trace, v) = graph_method(net);
        let elapsed = start.elapsed();
        t_graph_ms = Some(millis(elapsed));
        let skipped = trace
            .iter()
            .filter(|s| s.pivot.is_none())
            .map(|s| g.reaction_names()[s.reaction].clone())
            .collect();
        diagnostics.graph = Some(graph_diagnostics(&g, skipped, &v));
        if method == Method::Both {
            final_dot = Some(g.to_dot(model));
        }
    }

    let mv = diagnostics.matrix.as_ref().map(|d| d.verdict);
    let gv = diagnostics.graph.as_ref().map(|d| d.verdict);
    let (verdict, agreement) = match (mv, gv) {
        (Some(a), Some(b)) => (a, Some(a == b)),
        (Some(a), None) | (None, Some(a)) => (a, None),
        (None, None) => unreachable!("every method runs at least one decider"),
    };
    let report = AnalysisReport {
        model: model.to_string(),
        method,
        verdict,
        species: net.num_species(),
        reactions: net.num_reactions(),
        t_matrix_ms,
        t_graph_ms,
        agreement,
        diagnostics,
    };
    if agreement == Some(false) {
        return Err(Disagreement {
            report: Box::new(report),
            rref: rref_dump.expect("matrix ran"),
            final_graph_dot: final_dot.expect("graph ran"),
        });
    }
    Ok(report)
}

/// A model that could not be analysed in a benchmark run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchFailure {
    pub model: String,
    pub kind: FailureKind,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FailureKind {
    Parse,
    Disagreement,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub models: usize,
    pub failures: usize,
    pub disagreements: usize,
    /// Median of `t_matrix / t_graph` over analysed models.
    pub median_speedup: Option<f64>,
    pub median_t_matrix_ms: Option<f64>,
    pub median_t_graph_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub reports: Vec<AnalysisReport>,
    pub errors: Vec<BenchFailure>,
    pub summary: BenchSummary,
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len().is_multiple_of(2) { (values[mid - 1] + values[mid]) / 2.0 } else { values[mid] })
}

/// Analyses already-loaded models with both methods, `threads` at a time.
/// Results keep input order.
pub fn bench_models(models: &[(String, ReactionNetwork)], threads: usize) -> BenchReport {
    let run = || -> Vec<Result<AnalysisReport, Disagreement>> {
        models.par_iter().map(|(name, net)| analyze(name, net, Method::Both)).collect()
    };
    let results = if threads <= 1 {
        models.iter().map(|(name, net)| analyze(name, net, Method::Both)).collect()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    };

    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for res in results {
        match res {
            Ok(r) => reports.push(r),
            Err(d) => errors.push(BenchFailure {
                model: d.report.model.clone(),
                kind: FailureKind::Disagreement,
                message: d.to_string(),
            }),
        }
    }
    summarize(reports, errors)
}

fn summarize(reports: Vec<AnalysisReport>, errors: Vec<BenchFailure>) -> BenchReport {
    let mut speedups: Vec<f64> = reports.iter().filter_map(AnalysisReport::speedup).collect();
    let mut tm: Vec<f64> = reports.iter().filter_map(|r| r.t_matrix_ms).collect();
    let mut tg: Vec<f64> = reports.iter().filter_map(|r| r.t_graph_ms).collect();
    let summary = BenchSummary {
        models: reports.len() + errors.len(),
        failures: errors.len(),
        disagreements: errors.iter().filter(|e| e.kind == FailureKind::Disagreement).count(),
        median_speedup: median(&mut speedups),
        median_t_matrix_ms: median(&mut tm),
        median_t_graph_ms: median(&mut tg),
    };
    BenchReport { reports, errors, summary }
}

/// Loads a corpus (directory or batch file) and benchmarks every model that
/// parses. Parse failures are recorded and the run continues.
pub fn bench(path: &Path, opts: ParseOptions, threads: usize) -> Result<BenchReport, CorpusError> {
    let batch = parse_batch(path, opts)?;
    let mut report = bench_models(&batch.models, threads);
    let parse_failures: Vec<BenchFailure> = batch
        .errors
        .into_iter()
        .map(|e| BenchFailure { model: e.model, kind: FailureKind::Parse, message: e.error.to_string() })
        .collect();
    let mut errors = parse_failures;
    errors.append(&mut report.errors);
    Ok(summarize(report.reports, errors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_network;

    #[test]
    fn both_methods_agree_on_fixtures() {
        let intro = parse_network("A + B <=> C <=> A + 2 D").unwrap();
        let r = analyze("intro", &intro, Method::Both).unwrap();
        assert_eq!(r.verdict, Verdict::UnconditionallyBinomial);
        assert_eq!(r.agreement, Some(true));
        assert!(r.t_matrix_ms.unwrap() > 0.0 && r.t_graph_ms.unwrap() > 0.0);

        let ex3 = parse_network("3 B <=> 2 C + A <=> 2 D + 2 B <=> 3 B").unwrap();
        let r = analyze("ex3", &ex3, Method::Both).unwrap();
        assert_eq!(r.verdict, Verdict::NotUnconditionallyBinomial);
        assert_eq!(r.agreement, Some(true));
        let m = r.diagnostics.matrix.unwrap();
        assert_eq!(m.violating_rows, ["B", "C"]);
        let g = r.diagnostics.graph.unwrap();
        assert_eq!(g.violating_components, ["{B, C | r1, r2, r3}"]);
        assert_eq!(g.skipped_reactions, ["r3"]);
    }

    #[test]
    fn single_method_has_no_agreement_flag() {
        let net = parse_network("A <=> B").unwrap();
        let r = analyze("m", &net, Method::Graph).unwrap();
        assert_eq!(r.agreement, None);
        assert!(r.t_matrix_ms.is_none() && r.diagnostics.matrix.is_none());
        let r = analyze("m", &net, Method::Matrix).unwrap();
        assert!(r.t_graph_ms.is_none() && r.diagnostics.graph.is_none());
    }

    #[test]
    fn degenerate_only_network() {
        let net = parse_network("A <=> A").unwrap();
        let r = analyze("deg", &net, Method::Both).unwrap();
        assert_eq!(r.verdict, Verdict::UnconditionallyBinomial);
        assert_eq!(r.diagnostics.degenerate_reactions, ["r1"]);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&mut []), None);
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), Some(2.5));
    }

    #[test]
    fn method_parsing() {
        assert_eq!("both".parse::<Method>(), Ok(Method::Both));
        assert!("fast".parse::<Method>().is_err());
    }
}
