//! CSV and JSON serialisation of benchmark results.
//!
//! The CSV has one row per analysed model with the columns
//! `model,n,r,verdict,t_matrix_ms,t_graph_ms,speedup`, `.` as decimal
//! separator and LF line endings. Times are printed with six decimals
//! (nanosecond resolution); the speedup is matrix time over graph time.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::ReportError;
use crate::harness::{AnalysisReport, BenchReport};
use crate::Verdict;

pub const CSV_HEADER: [&str; 7] = ["model", "n", "r", "verdict", "t_matrix_ms", "t_graph_ms", "speedup"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub model: String,
    pub n: usize,
    pub r: usize,
    pub verdict: Verdict,
    pub t_matrix_ms: f64,
    pub t_graph_ms: f64,
    pub speedup: f64,
}

impl CsvRow {
    pub fn from_report(r: &AnalysisReport) -> Option<Self> {
        let (tm, tg) = (r.t_matrix_ms?, r.t_graph_ms?);
        Some(Self {
            model: r.model.clone(),
            n: r.species,
            r: r.reactions,
            verdict: r.verdict,
            t_matrix_ms: tm,
            t_graph_ms: tg,
            speedup: tm / tg,
        })
    }
}

pub fn write_csv<W: Write>(report: &BenchReport, out: W) -> Result<(), ReportError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in report.reports.iter().filter_map(CsvRow::from_report) {
        w.write_record([
            row.model,
            row.n.to_string(),
            row.r.to_string(),
            row.verdict.to_string(),
            format!("{:.6}", row.t_matrix_ms),
            format!("{:.6}", row.t_graph_ms),
            format!("{:.6}", row.speedup),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRow>, ReportError> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    if headers.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(ReportError::Csv(csv::Error::from(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("unexpected CSV header: {}", headers.iter().collect::<Vec<_>>().join(",")),
        ))));
    }
    Ok(r.deserialize().collect::<Result<Vec<CsvRow>, _>>()?)
}

pub fn write_json<W: Write>(report: &BenchReport, mut out: W) -> Result<(), ReportError> {
    serde_json::to_writer_pretty(&mut out, report)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// One-line summary, e.g. `3 models, 0 failures, median speedup 1.234`.
pub fn summary_line(report: &BenchReport) -> String {
    let s = &report.summary;
    let speedup = s.median_speedup.map_or_else(|| "n/a".to_string(), |v| format!("{v:.3}"));
    format!(
        "{} models, {} failures ({} disagreements), median speedup (matrix/graph) {}",
        s.models, s.failures, s.disagreements, speedup
    )
}
