//! `skewwalk`: analyse oriented graphs, generate test families, and find or
//! verify closed directed walks of exact length.
//!
//! Exit codes: 0 success, 1 verification false or a failed batch row,
//! 2 no walk found, 3 usage or parse error.

mod batch;
mod commands;
mod families;
mod run_manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::run_manifest::RunManifest;

pub const EXIT_FALSE: u8 = 1;
pub const EXIT_NOT_FOUND: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "skewwalk", version, about = "Closed directed walks of exact length in oriented graphs")]
struct Cli {
    /// Write a run manifest (arguments, version, input and output digests) here.
    #[arg(long, global = true, value_name = "OUT")]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Degree statistics, girth, bipartition and the girth upper bound.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Write a generated graph as an edge list.
    Generate {
        /// blowup (k, m), tournament (m), glued (k, ell) or regime (k, n).
        #[arg(long)]
        family: String,
        /// Comma-separated `name=value` pairs, e.g. `k=5,m=2`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Search for a closed directed walk of length ELL.
    FindWalk {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        ell: String,
        /// Overrides the least non-divisor of ELL above 2.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Decide by matrix powers whether a closed walk of length ELL exists.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        ell: String,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Write out a walk expression (or a find-walk report) vertex by vertex.
    Expand {
        #[arg(long, value_name = "FILE")]
        expr: PathBuf,
        /// Check the expanded walk against this graph.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Run every row of a JSON batch file and report pass or fail per row.
    Batch {
        file: PathBuf,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
}

/// Result of one command: its output text and exit code.
pub struct Outcome {
    pub text: String,
    pub code: u8,
    pub inputs: Vec<PathBuf>,
    pub seed: Option<u64>,
    pub destination: Option<PathBuf>,
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(value) = std::env::var("SKEWWALK_THREADS") {
        let threads: usize = value
            .parse()
            .map_err(|_| anyhow::anyhow!("SKEWWALK_THREADS must be a positive integer, got `{value}`"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Analyze { graph, json } => commands::analyze(graph, json),
        Command::Generate { family, params, seed, out } => {
            commands::generate(&family, &params, seed, out)
        }
        Command::FindWalk { graph, ell, k, json } => commands::find_walk(graph, &ell, k, json),
        Command::Verify { graph, ell, json } => commands::verify(graph, &ell, json),
        Command::Expand { expr, graph, limit, json } => commands::expand(expr, graph, limit, json),
        Command::Batch { file, json } => batch::run(file, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_USAGE);
    }
    let manifest_path = cli.manifest.clone();
    let outcome = match run(cli) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let written = match &outcome.destination {
        Some(path) => std::fs::write(path, &outcome.text)
            .map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display())),
        None => {
            print!("{}", outcome.text);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_USAGE);
    }
    if let Some(path) = manifest_path {
        let manifest = RunManifest::for_run(&outcome);
        if let Err(e) = manifest.and_then(|m| m.write(&path)) {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    ExitCode::from(outcome.code)
}
