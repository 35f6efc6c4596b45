//! `rcrn`: decide unconditional binomiality of reversible reaction networks.
//!
//! Exit codes: 0 analysed (whatever the verdict), 2 input could not be
//! read or parsed, 3 the two methods disagreed, 4 bad command-line flags.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rcrn_core::Method;

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_DISAGREEMENT: u8 = 3;
pub const EXIT_BAD_FLAGS: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "rcrn", version, about = "Unconditional binomiality of reversible chemical reaction networks")]
struct Cli {
    /// Accept irreversible `->` reactions, adding a free reverse rate constant.
    #[arg(long, global = true)]
    assume_reversible: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyse the model(s) in a file.
    Analyze(AnalyzeArgs),
    /// Run both methods over a corpus and write timing reports.
    Bench(BenchArgs),
    /// Generate a random reversible network.
    Random(RandomArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Matrix,
    Graph,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Matrix => Method::Matrix,
            MethodArg::Graph => Method::Graph,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphDump {
    Initial,
    Final,
    Steps,
}

#[derive(clap::Args, Debug)]
struct AnalyzeArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "both")]
    method: MethodArg,
    /// Print the steady-state polynomials.
    #[arg(long)]
    show_odes: bool,
    /// Print the binomial coefficient matrix and its reduced form.
    #[arg(long)]
    dump_matrix: bool,
    /// Write DOT snapshots of the species-reaction graph.
    #[arg(long, value_enum)]
    dump_graph: Option<GraphDump>,
    /// Directory for DOT files.
    #[arg(long, default_value = ".")]
    dump_dir: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(clap::Args, Debug)]
struct BenchArgs {
    /// Directory of `*.crn` files or a batch file.
    path: PathBuf,
    /// CSV report (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report with full diagnostics.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(clap::Args, Debug)]
struct RandomArgs {
    #[arg(long)]
    seed: u64,
    /// Species count, `N` or `A..B` (inclusive).
    #[arg(long)]
    species: String,
    /// Reaction count, `N` or `A..B` (inclusive).
    #[arg(long)]
    reactions: String,
    #[arg(long, default_value_t = 3)]
    max_coeff: u32,
    /// Most distinct species in one complex.
    #[arg(long, default_value_t = 3)]
    max_complex_size: usize,
    /// Write the network here instead of stdout.
    #[arg(long)]
    emit: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_FLAGS } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let opts = rcrn_core::ParseOptions { assume_reversible: cli.assume_reversible };
    let code = match cli.command {
        Command::Analyze(args) => commands::analyze(&args, opts),
        Command::Bench(args) => commands::bench(&args, opts),
        Command::Random(args) => commands::random(&args),
    };
    ExitCode::from(code)
}
