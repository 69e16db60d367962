//! JSON run configuration and command-line overrides.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use qlg_core::games::{SpinHalfGameSpec, SpinOneGameSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GameChoice {
    SpinHalf,
    SpinOne,
}

/// Contents of a `--config` file. Every section is optional; flags given on
/// the command line win over file values.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub schema_version: u32,
    pub game: Option<GameChoice>,
    pub spin_half: Option<SpinHalfGameSpec>,
    pub spin_one: Option<SpinOneGameSpec>,
    pub seed: Option<u64>,
    pub search: Option<SearchSection>,
    pub simulation: Option<SimulationSection>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSection {
    pub coarse_step: Option<f64>,
    pub refine_tol: Option<f64>,
    pub residual_tol: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSection {
    pub rounds: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let cfg: FileConfig =
            serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        if cfg.schema_version != SCHEMA_VERSION {
            bail!("config schema_version {} is not supported (expected {SCHEMA_VERSION})", cfg.schema_version);
        }
        Ok(cfg)
    }
}

/// Game selection and parameter overrides shared by several commands.
#[derive(Args, Clone, Debug, Default)]
pub struct GameArgs {
    /// Which game to use
    #[arg(long, value_enum)]
    pub game: Option<GameChoice>,
    /// Alice's diagonal angle in degrees
    #[arg(long, allow_negative_numbers = true)]
    pub theta_a: Option<f64>,
    /// Bob's diagonal angle in degrees
    #[arg(long, allow_negative_numbers = true)]
    pub theta_b: Option<f64>,
    /// Spin-½ payoff for question 1 against position 3
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Spin-½ payoff for question 2 against position 4
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Spin-½ payoff for question 3 against position 1
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    /// Spin-½ payoff for question 4 against position 2
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<f64>,
    /// Spin-1 safe payoffs u0..u4, comma separated
    #[arg(long, value_delimiter = ',', num_args = 5, allow_negative_numbers = true)]
    pub u: Option<Vec<f64>>,
    /// Spin-1 exact-guess payoffs v0..v4, comma separated
    #[arg(long, value_delimiter = ',', num_args = 5, allow_negative_numbers = true)]
    pub v: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug)]
pub enum GameSpec {
    Half(SpinHalfGameSpec),
    One(SpinOneGameSpec),
}

impl GameArgs {
    pub fn choice(&self, file: &FileConfig) -> GameChoice {
        self.game.or(file.game).unwrap_or(GameChoice::SpinHalf)
    }

    /// Resolves the game spec without validating payoffs.
    pub fn resolve(&self, file: &FileConfig) -> Result<GameSpec> {
        Ok(match self.choice(file) {
            GameChoice::SpinHalf => {
                if self.u.is_some() || self.v.is_some() {
                    bail!("--u/--v apply to the spin-one game only");
                }
                let base = file.spin_half.unwrap_or_else(SpinHalfGameSpec::symmetric_unit);
                GameSpec::Half(SpinHalfGameSpec {
                    theta_a: self.theta_a.unwrap_or(base.theta_a),
                    theta_b: self.theta_b.unwrap_or(base.theta_b),
                    a: self.a.unwrap_or(base.a),
                    b: self.b.unwrap_or(base.b),
                    c: self.c.unwrap_or(base.c),
                    d: self.d.unwrap_or(base.d),
                })
            }
            GameChoice::SpinOne => {
                if [self.a, self.b, self.c, self.d].iter().any(Option::is_some) {
                    bail!("--a/--b/--c/--d apply to the spin-half game only");
                }
                let base = file.spin_one.unwrap_or_else(SpinOneGameSpec::demo);
                GameSpec::One(SpinOneGameSpec {
                    theta_a: self.theta_a.unwrap_or(base.theta_a),
                    theta_b: self.theta_b.unwrap_or(base.theta_b),
                    u: five(self.u.as_deref(), base.u)?,
                    v: five(self.v.as_deref(), base.v)?,
                })
            }
        })
    }

    /// Resolves and validates the game spec.
    pub fn spec(&self, file: &FileConfig) -> Result<GameSpec> {
        let spec = self.resolve(file)?;
        match &spec {
            GameSpec::Half(s) => s.validate()?,
            GameSpec::One(s) => s.validate()?,
        }
        Ok(spec)
    }
}

fn five(values: Option<&[f64]>, default: [f64; 5]) -> Result<[f64; 5]> {
    match values {
        None => Ok(default),
        Some(v) => v.try_into().map_err(|_| anyhow::anyhow!("expected five comma-separated values, got {}", v.len())),
    }
}
