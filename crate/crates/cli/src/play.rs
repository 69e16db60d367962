//! Terminal play: a human Alice against a Born-sampled Bob.

use std::fs;
use std::io::{self, BufRead, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::Args;
use serde::Serialize;

use qlg_core::equilibrium::{analyze_half, SearchOptions};
use qlg_core::playsim::{Answer, BornBob};

use crate::commands::Context;
use crate::config::{GameArgs, GameSpec};

#[derive(Args, Debug)]
pub struct PlayArgs {
    #[command(flatten)]
    pub game: GameArgs,
    /// Bob's planar angle in degrees
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Read moves from this file (one question 1-4 or `quit` per line)
    #[arg(long)]
    pub script: Option<PathBuf>,
}

#[derive(Serialize)]
struct Summary {
    rounds: u64,
    total: f64,
    mean: f64,
    std_error: f64,
    beta: f64,
    /// Payoff Alice can guarantee with a wavefunction strategy.
    maximin_value: f64,
}

pub fn run(ctx: &Context, args: &PlayArgs) -> Result<ExitCode> {
    let GameSpec::Half(spec) = args.game.spec(&ctx.file)? else {
        bail!("play supports the spin-half game only");
    };
    let interactive = args.script.is_none();
    let lines: Box<dyn Iterator<Item = io::Result<String>>> = match &args.script {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading script {}", path.display()))?;
            Box::new(text.lines().map(|l| Ok(l.to_string())).collect::<Vec<_>>().into_iter())
        }
        None => {
            if !io::stdin().is_terminal() {
                bail!("stdin is not a terminal; pass --script FILE for non-interactive play");
            }
            Box::new(io::stdin().lock().lines())
        }
    };
    let maximin_value = analyze_half(&spec, &SearchOptions::default())?.lower_value;
    let h = spec.payoff_table();
    let mut bob = BornBob::new(args.beta, spec.theta_b, ctx.seed());
    let mut out = io::stdout().lock();
    let (mut n, mut total, mut total_sq) = (0u64, 0.0f64, 0.0f64);
    if interactive {
        writeln!(out, "Bob hides on the square 1-2-3-4. Ask a vertex (1-4); `quit` ends the game.")?;
    }
    let mut lines = lines;
    loop {
        if interactive {
            write!(out, "question> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        let line = line?;
        let token = line.trim();
        if token.is_empty() {
            continue;
        }
        if matches!(token, "quit" | "q" | "exit") {
            break;
        }
        let question = match token.parse::<u8>() {
            Ok(q) if (1..=4).contains(&q) => q,
            _ => {
                writeln!(out, "unrecognised move {token:?}; enter 1-4 or quit")?;
                continue;
            }
        };
        let (answer, position) = bob.answer(question)?;
        let payoff = match answer {
            Answer::No => h[(question - 1) as usize][(position - 1) as usize],
            Answer::Yes => 0.0,
        };
        n += 1;
        total += payoff;
        total_sq += payoff * payoff;
        let said = if answer == Answer::No { format!("no (Bob at {position})") } else { "yes".to_string() };
        writeln!(out, "round {n}: ask {question} -> {said}, payoff {payoff}, total {total}")?;
    }
    let mean = if n > 0 { total / n as f64 } else { 0.0 };
    let var = if n > 1 { ((total_sq - n as f64 * mean * mean) / (n as f64 - 1.0)).max(0.0) } else { 0.0 };
    let summary = Summary {
        rounds: n,
        total,
        mean,
        std_error: if n > 0 { (var / n as f64).sqrt() } else { 0.0 },
        beta: args.beta,
        maximin_value,
    };
    writeln!(out, "{}", serde_json::to_string(&summary)?)?;
    Ok(ExitCode::SUCCESS)
}
