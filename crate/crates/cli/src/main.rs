use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod commands;

use rigiditylab::random::{DEFAULT_BOUND, DEFAULT_RETRIES};

/// Generic global rigidity analysis and framework transfer tools.
///
/// Exit codes: 0 globally rigid or success, 1 not globally rigid or a domain
/// error, 2 unreadable input or bad arguments, 3 internal error.
#[derive(Parser)]
#[command(name = "rigiditylab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Analyze,
    Pogorelov,
    Gram,
    Transfer,
    Enumerate,
    BuildPair,
}

#[derive(Subcommand)]
enum Command {
    /// Decide generic global rigidity of a graph in the chosen space
    Analyze(Invocation),
    /// Map an equivalent Euclidean pair into pseudo-Euclidean space
    Pogorelov(Invocation),
    /// g-matrix, inertia and rank of a framework
    Gram(Invocation),
    /// Move frameworks between hyperbolic, Minkowski-coned and Euclidean-coned form
    Transfer(Invocation),
    /// Count realizations of a sampled measurement vector
    Enumerate(Invocation),
    /// Build an equivalent non-congruent Euclidean pair by vertex reflection
    BuildPair(Invocation),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceArg {
    Euclidean,
    Complex,
    Pseudo,
    Minkowski,
    Hyperbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Args, Clone, Debug)]
pub struct Invocation {
    /// Input JSON file
    input: PathBuf,
    #[command(flatten)]
    options: Options,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct Options {
    /// Dimension
    #[arg(long)]
    pub d: Option<usize>,
    /// Number of negative squares in the pseudo-Euclidean form
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long, value_enum)]
    pub space: Option<SpaceArg>,
    #[arg(long, env = "RIGIDITYLAB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Sampled coordinates are integers in [-bound, bound] over bound
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    pub bound: u64,
    #[arg(long, default_value_t = DEFAULT_RETRIES)]
    pub retries: usize,
    /// Attach an explicit non-rigidity witness when one can be built
    #[arg(long)]
    pub witness: bool,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Multi-start count for planar enumeration
    #[arg(long, default_value_t = 2000)]
    pub starts: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub dedup_tol: f64,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
pub struct RunConfig<'a> {
    pub command: CommandName,
    pub input: String,
    #[serde(flatten)]
    pub options: &'a Options,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, inv) = match cli.command {
        Command::Analyze(i) => (CommandName::Analyze, i),
        Command::Pogorelov(i) => (CommandName::Pogorelov, i),
        Command::Gram(i) => (CommandName::Gram, i),
        Command::Transfer(i) => (CommandName::Transfer, i),
        Command::Enumerate(i) => (CommandName::Enumerate, i),
        Command::BuildPair(i) => (CommandName::BuildPair, i),
    };
    let outcome = std::panic::catch_unwind(|| commands::run(name, &inv.input, &inv.options));
    let code = match outcome {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
        Err(_) => 3,
    };
    ExitCode::from(code)
}
