//! `qlg`: certify the question lattices, search for equilibria, simulate and
//! play the games.
//!
//! Exit codes: 0 success, 1 a property check failed, 2 usage or configuration
//! error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod output;
mod play;

use config::{FileConfig, GameArgs};

#[derive(Parser, Debug)]
#[command(name = "qlg", version, about = "Quantum-like macroscopic games on nondistributive question lattices")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// JSON run configuration (see schemas/config.schema.json)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Random seed
    #[arg(long, global = true, env = "QLGAME_SEED")]
    pub seed: Option<u64>,
    /// Progress and timing on stderr (repeat for more)
    #[arg(long, short, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify lattice laws, distributivity witnesses and the projector representation
    Lattice(commands::LatticeArgs),
    /// Quantum saddle search next to the classical mixed-strategy value
    Equilibrium(commands::EquilibriumArgs),
    /// Monte Carlo play of the repeated game
    Simulate(commands::SimulateArgs),
    /// Bayes sum versus Born probability for a planar strategy
    Interference(commands::InterferenceArgs),
    /// Play Alice against a Born-sampled Bob in the terminal
    Play(play::PlayArgs),
    /// Classical mixed-strategy solution of the payoff matrix
    Classical(ClassicalArgs),
}

#[derive(Args, Debug)]
pub struct ClassicalArgs {
    #[command(flatten)]
    pub game: GameArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let file = match &cli.global.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig { schema_version: config::SCHEMA_VERSION, ..FileConfig::default() },
    };
    let ctx = commands::Context { global: cli.global, file };
    match cli.command {
        Command::Lattice(args) => commands::lattice(&ctx, &args),
        Command::Equilibrium(args) => commands::equilibrium(&ctx, &args),
        Command::Simulate(args) => commands::simulate(&ctx, &args),
        Command::Interference(args) => commands::interference(&ctx, &args),
        Command::Play(args) => play::run(&ctx, &args),
        Command::Classical(args) => commands::classical(&ctx, &args),
    }
}
