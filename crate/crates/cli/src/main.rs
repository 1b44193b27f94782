//! `atdi` command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 invalid input, 3 model error,
//! 4 failed `explain --verify`.

mod analyze;
mod annotate;
mod config;
mod error;
mod evaluate;
mod explain;
mod files;
mod train;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::{FileConfig, CONFIG_ENV};

#[derive(Debug, Parser)]
#[command(name = "atdi", version, about = "Architectural technical debt index from architectural smells")]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true, env = CONFIG_ENV, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Detect smells and write the ATDI report and feature matrix.
    Analyze(analyze::AnalyzeArgs),
    /// Train a severity model on a labelled feature matrix, with cross-validation.
    Train(train::TrainArgs),
    /// Compare smells pairwise and derive severity labels.
    Annotate(annotate::AnnotateArgs),
    /// Score a model's rankings against labels.
    Evaluate(evaluate::EvaluateArgs),
    /// Attribute model scores to features.
    Explain(explain::ExplainArgs),
}

/// Seed flag shared by the randomised commands.
#[derive(Debug, Clone, Args)]
pub struct SeedArg {
    /// Random seed (default: config file, then 42).
    #[arg(long)]
    pub seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = FileConfig::load(cli.config.as_deref()).and_then(|cfg| match cli.command {
        Command::Analyze(a) => analyze::run(&a, &cfg),
        Command::Train(a) => train::run(&a, &cfg),
        Command::Annotate(a) => annotate::run(&a, &cfg),
        Command::Evaluate(a) => evaluate::run(&a, &cfg),
        Command::Explain(a) => explain::run(&a, &cfg),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("atdi: {e}");
            e.exit_code()
        }
    }
}
