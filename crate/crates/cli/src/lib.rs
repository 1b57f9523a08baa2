//! Scenario runner for `capinf-core`: reads a JSON scenario, runs one
//! construction, and emits a deterministic, digested report.
//!
//! Exit codes: 0 all verdicts true, 1 a verdict is false, 2 input or schema
//! error, 3 a verdict is unknown at the horizon.

pub mod report;
pub mod run;
pub mod scenario;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{Body, Outcome, Report};
pub use run::{run, Command, RunOptions, COMBINATORS, DEFAULT_HORIZON};
pub use scenario::{Params, Scenario};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] capinf_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use capinf_core::Error as E;
        match self {
            CliError::Core(E::Violation(_)) => 1,
            CliError::Core(E::Horizon { .. }) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "capinf", version, about = "Run cover constructions on finitely presented scenarios")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Horizon for undecided checks; overrides the scenario's value.
    #[arg(long, global = true)]
    pub horizon: Option<u64>,
    /// Seed for randomized checks (catalog reordering in oracle-check).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ScenarioArg {
    #[arg(long)]
    pub scenario: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Cover, ω-cover, γ-cover and properness of the scenario's cover.
    Classify(ScenarioArg),
    /// Derived family of the scenario's witness.
    Ainf(ScenarioArg),
    /// Run one selection construction.
    Select {
        #[command(flatten)]
        scenario: ScenarioArg,
        /// One of the combinators; defaults to `params.combinator`.
        #[arg(long)]
        combinator: Option<String>,
    },
    /// Exhaustive witness search, optionally cross-checking the scenario's witness.
    OracleCheck(ScenarioArg),
    /// Re-render a saved JSON report after checking its digest.
    Report {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Loads and runs a scenario file; the digest excludes timing.
pub fn run_file(command: &Command, path: &Path, opts: RunOptions) -> Result<Report, CliError> {
    let scenario = Scenario::load(path)?;
    let start = Instant::now();
    let body = run(command, &scenario, opts)?;
    Ok(body.seal(start.elapsed().as_millis() as u64))
}

fn resolve(sub: &Sub) -> Result<(Command, &Path), CliError> {
    Ok(match sub {
        Sub::Classify(a) => (Command::Classify, &a.scenario),
        Sub::Ainf(a) => (Command::Ainf, &a.scenario),
        Sub::OracleCheck(a) => (Command::OracleCheck, &a.scenario),
        Sub::Select { scenario, combinator } => {
            let name = match combinator {
                Some(c) => c.clone(),
                None => Scenario::load(&scenario.scenario)?
                    .params
                    .combinator
                    .ok_or_else(|| CliError::Input("select needs --combinator or params.combinator".into()))?,
            };
            if !COMBINATORS.contains(&name.as_str()) {
                return Err(CliError::Input(format!("unknown combinator {name:?}; expected one of {}", COMBINATORS.join(", "))));
            }
            (Command::Select(name), &scenario.scenario)
        }
        Sub::Report { .. } => unreachable!("handled by the caller"),
    })
}

fn reload(path: &Path) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let report: Report = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("not a report: {e}")))?;
    if report.body.digest() != report.digest {
        return Err(CliError::Input(format!("digest mismatch in {}", path.display())));
    }
    if report.body.recomputed_outcome() != report.body.outcome {
        return Err(CliError::Input(format!("outcome does not follow from the verdicts in {}", path.display())));
    }
    Ok(report)
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Input(e.to_string())),
    }
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let opts = RunOptions { horizon: cli.horizon, seed: cli.seed };
    let result = match &cli.command {
        Sub::Report { input } => reload(input),
        sub => resolve(sub).and_then(|(command, path)| run_file(&command, path, opts)),
    };
    match result.and_then(|report| emit(&cli, &report).map(|_| report.body.outcome)) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
