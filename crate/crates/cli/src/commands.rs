use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::Path;

use anyhow::{bail, Context};
use rcrn_core::graph::{transform_observed, SRGraph};
use rcrn_core::harness::{self, Disagreement};
use rcrn_core::matrix::{reaction_label, MatrixDump};
use rcrn_core::random::RandomNetworkSpec;
use rcrn_core::report::{summary_line, write_csv, write_json};
use rcrn_core::{
    build_matrix, create_graph, parse_batch_str, rref, steady_state_polynomials, AnalysisReport,
    ParseOptions, ReactionNetwork,
};
use serde_json::{json, Value};

use crate::{
    AnalyzeArgs, BenchArgs, Format, GraphDump, RandomArgs, EXIT_BAD_FLAGS, EXIT_DISAGREEMENT,
    EXIT_OK, EXIT_PARSE,
};

const EXIT_IO: u8 = 1;

fn file_stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "model".into(), |s| s.to_string_lossy().into_owned())
}

pub fn analyze(args: &AnalyzeArgs, opts: ParseOptions) -> u8 {
    let text = match fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.file.display());
            return EXIT_PARSE;
        }
    };
    let batch = parse_batch_str(&text, &file_stem(&args.file), opts);
    if !batch.errors.is_empty() {
        for e in &batch.errors {
            eprintln!("error: {}: {e}", args.file.display());
        }
        return EXIT_PARSE;
    }
    if batch.models.is_empty() {
        eprintln!("error: {}: no model found", args.file.display());
        return EXIT_PARSE;
    }

    let mut json_reports = Vec::new();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for (name, net) in &batch.models {
        for rx in net.degenerate_reactions() {
            eprintln!(
                "warning: {name}: reaction {} has identical complexes and contributes no binomial",
                reaction_label(rx.index)
            );
        }
        let report = match harness::analyze(name, net, args.method.into()) {
            Ok(r) => r,
            Err(d) => {
                report_disagreement(&d);
                return EXIT_DISAGREEMENT;
            }
        };
        if let Some(mode) = args.dump_graph {
            if let Err(e) = dump_graph(name, net, mode, &args.dump_dir) {
                eprintln!("error: {e:#}");
                return EXIT_IO;
            }
        }
        let result = match args.format {
            Format::Text => write_text(&mut out, &report, net, args),
            Format::Json => {
                json_reports.push(json_report(&report, net, args));
                Ok(())
            }
        };
        if let Err(e) = result {
            eprintln!("error: {e}");
            return EXIT_IO;
        }
    }
    if args.format == Format::Json {
        let value = if json_reports.len() == 1 { json_reports.remove(0) } else { Value::Array(json_reports) };
        if let Err(e) = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serialisable")) {
            eprintln!("error: {e}");
            return EXIT_IO;
        }
    }
    EXIT_OK
}

fn report_disagreement(d: &Disagreement) {
    eprintln!("fatal: {d}");
    eprintln!("this is a bug; diagnostics follow");
    eprintln!("{}", serde_json::to_string_pretty(&d.report).expect("serialisable"));
    eprintln!("reduced matrix:\n{}", d.rref);
    eprintln!("final graph:\n{}", d.final_graph_dot);
}

fn odes(net: &ReactionNetwork) -> Vec<(String, String)> {
    let labels = net.rate_labels();
    steady_state_polynomials(net)
        .iter()
        .zip(net.species_names())
        .map(|(p, s)| (s.clone(), p.display(net.species_names(), &labels).to_string()))
        .collect()
}

fn matrix_dumps(net: &ReactionNetwork) -> (MatrixDump, MatrixDump) {
    let bcm = build_matrix(net);
    let reduced = rref(&bcm.to_rational());
    (MatrixDump::of_matrix(&bcm), MatrixDump::of_rref(&bcm, &reduced))
}

fn fmt_ms(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |t| format!("{t:.6} ms"))
}

fn write_text(out: &mut impl Write, r: &AnalysisReport, net: &ReactionNetwork, args: &AnalyzeArgs) -> io::Result<()> {
    writeln!(out, "model: {}", r.model)?;
    writeln!(
        out,
        "species: {}, reactions: {} ({} degenerate)",
        r.species,
        r.reactions,
        r.diagnostics.degenerate_reactions.len()
    )?;
    if let Some(m) = &r.diagnostics.matrix {
        write!(out, "matrix: {} (rank {} of {} columns)", m.verdict, m.rank, m.cols)?;
        if !m.violating_rows.is_empty() {
            write!(out, "; rows with several nonzeros: {}", m.violating_rows.join(", "))?;
        }
        writeln!(out)?;
    }
    if let Some(g) = &r.diagnostics.graph {
        write!(out, "graph: {} ({} components)", g.verdict, g.components.len())?;
        if !g.violating_components.is_empty() {
            write!(out, "; offending components: {}", g.violating_components.join(" "))?;
        }
        writeln!(out)?;
    }
    writeln!(out, "verdict: {}", r.verdict)?;
    if let Some(a) = r.agreement {
        writeln!(out, "agreement: {a}")?;
    }
    if args.show_odes {
        writeln!(out, "steady-state polynomials:")?;
        for (s, p) in odes(net) {
            writeln!(out, "  d{s}/dt = {p}")?;
        }
    }
    if args.dump_matrix {
        let (m, reduced) = matrix_dumps(net);
        write!(out, "binomial coefficient matrix:\n{m}reduced row echelon form:\n{reduced}")?;
    }
    writeln!(out, "time matrix: {}", fmt_ms(r.t_matrix_ms))?;
    writeln!(out, "time graph: {}", fmt_ms(r.t_graph_ms))?;
    Ok(())
}

fn json_report(r: &AnalysisReport, net: &ReactionNetwork, args: &AnalyzeArgs) -> Value {
    let mut v = serde_json::to_value(r).expect("serialisable");
    if args.show_odes {
        v["odes"] = odes(net).into_iter().map(|(s, p)| json!({"species": s, "rhs": p})).collect();
    }
    if args.dump_matrix {
        let (m, reduced) = matrix_dumps(net);
        v["matrix"] = serde_json::to_value(m).expect("serialisable");
        v["rref"] = serde_json::to_value(reduced).expect("serialisable");
    }
    v
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn dump_graph(name: &str, net: &ReactionNetwork, mode: GraphDump, dir: &Path) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let mut g: SRGraph = create_graph(net);
    if mode == GraphDump::Initial {
        return write_file(&dir.join(format!("{name}.initial.dot")), &g.to_dot(name));
    }
    let width = g.num_reactions().to_string().len();
    let mut snapshots = Vec::new();
    transform_observed(&mut g, |g, step| {
        if mode == GraphDump::Steps {
            snapshots.push((step.reaction, g.to_dot(&format!("{name} step {}", step.reaction + 1))));
        }
    });
    if mode == GraphDump::Final {
        return write_file(&dir.join(format!("{name}.final.dot")), &g.to_dot(name));
    }
    for (r, dot) in snapshots {
        write_file(&dir.join(format!("{name}.step{:0width$}.dot", r + 1)), &dot)?;
    }
    Ok(())
}

pub fn bench(args: &BenchArgs, opts: ParseOptions) -> u8 {
    if args.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return EXIT_BAD_FLAGS;
    }
    if !args.path.exists() {
        eprintln!("error: {} does not exist", args.path.display());
        return EXIT_PARSE;
    }
    let report = match harness::bench(&args.path, opts, args.threads) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
    };
    for e in &report.errors {
        eprintln!("warning: {}: {}", e.model, e.message);
    }
    let written = (|| -> anyhow::Result<()> {
        match &args.out {
            Some(path) => {
                let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
                write_csv(&report, BufWriter::new(f))?;
            }
            None => write_csv(&report, io::stdout().lock())?,
        }
        if let Some(path) = &args.json {
            let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            write_json(&report, BufWriter::new(f))?;
        }
        Ok(())
    })();
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return EXIT_IO;
    }
    if args.out.is_some() {
        println!("{}", summary_line(&report));
    } else {
        eprintln!("{}", summary_line(&report));
    }
    if report.summary.disagreements > 0 {
        return EXIT_DISAGREEMENT;
    }
    EXIT_OK
}

fn parse_range(s: &str) -> anyhow::Result<RangeInclusive<usize>> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse::<usize>()?, b.trim().parse::<usize>()?),
        None => {
            let n = s.trim().parse::<usize>()?;
            (n, n)
        }
    };
    if lo > hi {
        bail!("empty range `{s}`");
    }
    Ok(lo..=hi)
}

pub fn random(args: &RandomArgs) -> u8 {
    let ranges = parse_range(&args.species)
        .with_context(|| format!("bad --species `{}`", args.species))
        .and_then(|s| {
            let r = parse_range(&args.reactions).with_context(|| format!("bad --reactions `{}`", args.reactions))?;
            Ok((s, r))
        });
    let (species, reactions) = match ranges {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_BAD_FLAGS;
        }
    };
    let spec = RandomNetworkSpec {
        seed: args.seed,
        species,
        reactions,
        max_coefficient: args.max_coeff,
        max_complex_size: args.max_complex_size,
    };
    if let Err(e) = spec.validate() {
        eprintln!("error: {e}");
        return EXIT_BAD_FLAGS;
    }
    let net = rcrn_core::generate_random(&spec);
    let text = format!(
        "# random network: seed {}, species {}, reactions {}\n{}",
        args.seed, args.species, args.reactions, net
    );
    match &args.emit {
        Some(path) => {
            if let Err(e) = write_file(path, &text) {
                eprintln!("error: {e:#}");
                return EXIT_IO;
            }
        }
        None => print!("{text}"),
    }
    EXIT_OK
}
