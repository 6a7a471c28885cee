//! `fuzzyrel`: solve, diagnose and approximate systems of fuzzy relational
//! equations from JSON files.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fuzzyrel::{Tolerance, DEFAULT_ENUMERATION_CAP};

use fuzzyrel_cli::commands::{self, Failure, Outcome, Settings, EXIT_INPUT};
use fuzzyrel_cli::input::{ProblemFile, RulesFile, TrainingFile};
use fuzzyrel_cli::output;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "fuzzyrel", version, about)]
struct Cli {
    /// Absolute tolerance for comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Cap on the number of candidates a minimal-solution enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    max_enumeration: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Skip the enumeration of minimal (maximal) solutions and approximations.
    #[arg(long, global = true)]
    skip_minimal: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide consistency and list the solution set.
    Solve { problem: PathBuf },
    /// Chebyshev distance and extremal Chebyshev approximations.
    Chebyshev { problem: PathBuf },
    /// Learn a weight matrix from input/output pairs.
    Learn { training: PathBuf },
    /// Learn rule parameters from several training instances.
    Rules { instances: PathBuf },
    /// Compare the closed forms against brute-force search.
    OracleCheck { problem: PathBuf },
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let tol =
        Tolerance::new(cli.tolerance).map_err(|e| Failure::from(format!("tolerance: {e}")))?;
    let s = Settings {
        tol,
        cap: cli.max_enumeration,
        skip_minimal: cli.skip_minimal,
    };
    match &cli.command {
        Command::Solve { problem } => commands::cmd_solve(&ProblemFile::load(problem)?, s),
        Command::Chebyshev { problem } => commands::cmd_chebyshev(&ProblemFile::load(problem)?, s),
        Command::Learn { training } => commands::cmd_learn(&TrainingFile::load(training)?, s),
        Command::Rules { instances } => commands::cmd_rules(&RulesFile::load(instances)?, s),
        Command::OracleCheck { problem } => {
            commands::cmd_oracle_check(&ProblemFile::load(problem)?, s)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            match cli.format {
                Format::Text => print!("{}", outcome.text),
                Format::Json => print!("{}", output::canonical_json(&outcome.json)),
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code as u8)
        }
    }
}
