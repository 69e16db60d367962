use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use qlg_core::contextual::{interference_decomposition, interference_decomposition_swapped, unperturbed_frequencies, InterferenceReport};
use qlg_core::equilibrium::{analyze_half, analyze_one, solve_classical, EquilibriumResult, SaddleAnalysis, SearchOptions};
use qlg_core::games::{
    expected_payoff_half, expected_payoff_one, payoff_matrix_half, payoff_matrix_one, pure_saddle_exists,
    pure_security_levels, PayoffMatrix,
};
use qlg_core::hilbert::{check_representation, spin_half_representation, spin_one_representation, StrategyVector};
use qlg_core::lattice::{build_spin_half_lattice, build_spin_one_lattice, DistributivityWitness, FiniteLattice};
use qlg_core::playsim::{
    born_conditionals_half, born_conditionals_one, frequency_check, simulate_mechanical_half, simulate_quantum_half,
    simulate_quantum_one, GameKind, RiskPolicy, SimConfig, SimMode, SimReport,
};

use crate::config::{FileConfig, GameArgs, GameChoice, GameSpec};
use crate::output::{num, opt, write_csv, write_json};
use crate::{ClassicalArgs, Format, GlobalArgs};

pub struct Context {
    pub global: GlobalArgs,
    pub file: FileConfig,
}

impl Context {
    pub fn seed(&self) -> u64 {
        self.global.seed.or(self.file.seed).unwrap_or(0)
    }

    fn out(&self) -> Option<&std::path::Path> {
        self.global.output.as_deref()
    }

    fn log(&self, msg: impl AsRef<str>) {
        if self.global.verbose > 0 {
            eprintln!("{}", msg.as_ref());
        }
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

// ---------------------------------------------------------------------------
// lattice

#[derive(Args, Debug)]
pub struct LatticeArgs {
    /// Which question lattice to certify
    #[arg(long, value_enum)]
    pub game: GameChoice,
    /// Diagonal angles (degrees) at which the projector representation is checked
    #[arg(long, value_delimiter = ',', default_values_t = [10.0, 30.0, 45.0, 70.0, 89.0])]
    pub thetas: Vec<f64>,
}

#[derive(Serialize)]
struct WitnessOut {
    x: String,
    y: String,
    z: String,
    lhs: String,
    rhs: String,
    text: String,
}

impl WitnessOut {
    fn new(l: &FiniteLattice, w: &DistributivityWitness) -> Self {
        Self {
            x: l.name(w.x).into(),
            y: l.name(w.y).into(),
            z: l.name(w.z).into(),
            lhs: l.name(w.lhs).into(),
            rhs: l.name(w.rhs).into(),
            text: l.describe_witness(w),
        }
    }
}

#[derive(Serialize)]
struct RepresentationOut {
    theta: f64,
    clean: bool,
    pairs_checked: usize,
    max_deviation: f64,
    mismatches: usize,
}

#[derive(Serialize)]
struct LatticeReport {
    game: GameChoice,
    elements: Vec<String>,
    distributive: bool,
    first_witness: Option<WitnessOut>,
    named_witness: WitnessOut,
    named_witness_expected: bool,
    modular: bool,
    orthocomplement_clean: bool,
    orthocomplement_messages: Vec<String>,
    representation: Vec<RepresentationOut>,
    passed: bool,
}

pub fn lattice(ctx: &Context, args: &LatticeArgs) -> Result<ExitCode> {
    let started = Instant::now();
    let (l, named, expected) = match args.game {
        GameChoice::SpinHalf => (build_spin_half_lattice(), ["1", "2", "3"], ("3", "0")),
        GameChoice::SpinOne => (build_spin_one_lattice(), ["A1", "A4", "A7"], ("A2", "0")),
    };
    let (distributive, first) = l.certify_distributivity();
    let w = l.distributivity_at(l.element(named[0])?, l.element(named[1])?, l.element(named[2])?)?;
    let named_witness = WitnessOut::new(&l, &w);
    let named_ok = named_witness.lhs == expected.0 && named_witness.rhs == expected.1;
    let (modular, _) = l.certify_modularity();
    let ortho = l.certify_orthocomplement();
    let mut representation = Vec::new();
    for &theta in &args.thetas {
        let projs = match args.game {
            GameChoice::SpinHalf => spin_half_representation(theta)?,
            GameChoice::SpinOne => spin_one_representation(theta)?,
        };
        let r = check_representation(&l, &projs)?;
        representation.push(RepresentationOut {
            theta,
            clean: r.is_clean(),
            pairs_checked: r.pairs_checked,
            max_deviation: r.max_deviation,
            mismatches: r.mismatches.len(),
        });
    }
    let passed =
        !distributive && named_ok && modular && ortho.is_clean() && representation.iter().all(|r| r.clean);
    let report = LatticeReport {
        game: args.game,
        elements: l.names().to_vec(),
        distributive,
        first_witness: first.map(|w| WitnessOut::new(&l, &w)),
        named_witness,
        named_witness_expected: named_ok,
        modular,
        orthocomplement_clean: ortho.is_clean(),
        orthocomplement_messages: ortho.messages,
        representation,
        passed,
    };
    ctx.log(format!("lattice certified in {:?}", started.elapsed()));
    match ctx.global.format {
        Format::Json => write_json(ctx.out(), &report)?,
        Format::Csv => write_csv(
            ctx.out(),
            &["theta", "clean", "pairs_checked", "max_deviation", "mismatches"],
            report.representation.iter().map(|r| {
                vec![num(r.theta), r.clean.to_string(), r.pairs_checked.to_string(), num(r.max_deviation), r.mismatches.to_string()]
            }),
        )?,
    }
    Ok(status(passed))
}

// ---------------------------------------------------------------------------
// equilibrium

#[derive(Args, Debug)]
pub struct EquilibriumArgs {
    #[command(flatten)]
    pub game: GameArgs,
    /// Coarse grid step in degrees (0 < step ≤ 5)
    #[arg(long)]
    pub coarse_step: Option<f64>,
    /// Refinement tolerance in degrees (≥ 0.001)
    #[arg(long)]
    pub refine_tol: Option<f64>,
    /// Saddle certificate tolerance, relative to the total payoff mass
    #[arg(long)]
    pub residual_tol: Option<f64>,
    /// Emit the payoff surface (alpha, beta, F) on the coarse grid as CSV instead
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Serialize)]
struct EquilibriumRecord {
    alpha: Value,
    beta: Value,
    value: f64,
    p: Vec<f64>,
    q: Vec<f64>,
    residual: f64,
}

fn angles(v: &[f64]) -> Value {
    match v {
        [a] => json!(a),
        many => json!(many),
    }
}

impl From<&EquilibriumResult> for EquilibriumRecord {
    fn from(e: &EquilibriumResult) -> Self {
        Self {
            alpha: angles(&e.alice_params),
            beta: angles(&e.bob_params),
            value: e.value,
            p: e.p_profile.clone(),
            q: e.q_profile.clone(),
            residual: e.residual,
        }
    }
}

#[derive(Serialize)]
struct QuantumOut {
    lower_value: f64,
    upper_value: f64,
    saddle_exists: bool,
    maximin: Vec<Value>,
    minimax: Vec<Value>,
    equilibria: Vec<EquilibriumRecord>,
}

impl From<&SaddleAnalysis> for QuantumOut {
    fn from(a: &SaddleAnalysis) -> Self {
        Self {
            lower_value: a.lower_value,
            upper_value: a.upper_value,
            saddle_exists: !a.equilibria.is_empty(),
            maximin: a.maximin.iter().map(|s| angles(&s.angles())).collect(),
            minimax: a.minimax.iter().map(|s| angles(&s.angles())).collect(),
            equilibria: a.equilibria.iter().map(EquilibriumRecord::from).collect(),
        }
    }
}

#[derive(Serialize)]
struct ClassicalOut {
    value: f64,
    x: BTreeMap<String, f64>,
    y: BTreeMap<String, f64>,
    pure_saddle_exists: bool,
    pure_lower_value: f64,
    pure_upper_value: f64,
}

fn classical_out(m: &PayoffMatrix) -> Result<ClassicalOut> {
    let sol = solve_classical(m)?;
    let (lo, hi) = pure_security_levels(m);
    Ok(ClassicalOut {
        value: sol.value,
        x: m.row_labels.iter().cloned().zip(sol.x).collect(),
        y: m.col_labels.iter().cloned().zip(sol.y).collect(),
        pure_saddle_exists: pure_saddle_exists(m),
        pure_lower_value: lo,
        pure_upper_value: hi,
    })
}

fn search_options(ctx: &Context, args: &EquilibriumArgs) -> Result<SearchOptions> {
    let file = ctx.file.search.clone().unwrap_or_default();
    let d = SearchOptions::default();
    let opts = SearchOptions {
        coarse_step: args.coarse_step.or(file.coarse_step).unwrap_or(d.coarse_step),
        refine_tol: args.refine_tol.or(file.refine_tol).unwrap_or(d.refine_tol),
        residual_tol: args.residual_tol.or(file.residual_tol).unwrap_or(d.residual_tol),
    };
    opts.validate()?;
    Ok(opts)
}

fn spec_json(spec: &GameSpec) -> Value {
    match spec {
        GameSpec::Half(s) => json!(s),
        GameSpec::One(s) => json!(s),
    }
}

pub fn equilibrium(ctx: &Context, args: &EquilibriumArgs) -> Result<ExitCode> {
    let spec = args.game.spec(&ctx.file)?;
    let opts = search_options(ctx, args)?;
    if args.sweep {
        let GameSpec::Half(s) = spec else {
            bail!("--sweep is available for the spin-half game only");
        };
        let n = (180.0 / opts.coarse_step).round() as usize;
        let step = 180.0 / n as f64;
        let rows = (0..n).flat_map(move |i| {
            (0..n).map(move |j| {
                let (a, b) = (i as f64 * step, j as f64 * step);
                vec![num(a), num(b), num(expected_payoff_half(&s, a, b))]
            })
        });
        write_csv(ctx.out(), &["alpha", "beta", "F"], rows)?;
        return Ok(ExitCode::SUCCESS);
    }
    let started = Instant::now();
    let (analysis, matrix) = match &spec {
        GameSpec::Half(s) => (analyze_half(s, &opts)?, payoff_matrix_half(s)),
        GameSpec::One(s) => (analyze_one(s, &opts)?, payoff_matrix_one(s)),
    };
    ctx.log(format!("saddle search finished in {:?}", started.elapsed()));
    let quantum = QuantumOut::from(&analysis);
    let classical = classical_out(&matrix)?;
    match ctx.global.format {
        Format::Json => write_json(
            ctx.out(),
            &json!({
                "game": args.game.choice(&ctx.file),
                "spec": spec_json(&spec),
                "search": opts,
                "quantum": quantum,
                "classical": classical,
            }),
        )?,
        Format::Csv => write_csv(
            ctx.out(),
            &["alpha", "beta", "value", "residual", "p", "q"],
            quantum.equilibria.iter().map(|e| {
                let join = |v: &[f64]| v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(";");
                vec![e.alpha.to_string(), e.beta.to_string(), num(e.value), num(e.residual), join(&e.p), join(&e.q)]
            }),
        )?,
    }
    Ok(ExitCode::SUCCESS)
}

pub fn classical(ctx: &Context, args: &ClassicalArgs) -> Result<ExitCode> {
    let spec = args.game.spec(&ctx.file)?;
    let m = match &spec {
        GameSpec::Half(s) => payoff_matrix_half(s),
        GameSpec::One(s) => payoff_matrix_one(s),
    };
    match ctx.global.format {
        Format::Json => write_json(
            ctx.out(),
            &json!({ "game": args.game.choice(&ctx.file), "spec": spec_json(&spec), "classical": classical_out(&m)? }),
        )?,
        Format::Csv => {
            let mut out = crate::output::sink(ctx.out())?;
            out.write_all(m.to_csv().as_bytes())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}


// ---------------------------------------------------------------------------
// simulate

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Quantum,
    Mechanical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RiskArg {
    AlwaysRisk,
    NeverRisk,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Quantum)]
    pub mode: ModeArg,
    /// Alice's planar angle in degrees (spin-half)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Bob's planar angle in degrees (spin-half)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Alice's vector x,y,z (spin-one; normalized on input)
    #[arg(long, value_delimiter = ',', num_args = 3)]
    pub phi: Option<Vec<f64>>,
    /// Bob's vector x,y,z (spin-one; normalized on input)
    #[arg(long, value_delimiter = ',', num_args = 3)]
    pub psi: Option<Vec<f64>>,
    /// Number of rounds
    #[arg(long)]
    pub rounds: Option<u64>,
    /// Whether Alice follows a first "no" with a second question (spin-one)
    #[arg(long, value_enum, default_value_t = RiskArg::NeverRisk)]
    pub risk_policy: RiskArg,
    /// Mechanical mode: starting frequencies of Bob's ball at 1..4
    #[arg(long, value_delimiter = ',', num_args = 4)]
    pub base: Option<Vec<f64>>,
    /// Mechanical mode: probabilities of Alice asking 1..4
    #[arg(long, value_delimiter = ',', num_args = 4)]
    pub policy: Option<Vec<f64>>,
    /// Write a per-round trace CSV here
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

fn unit_vector(v: Option<&[f64]>) -> Result<StrategyVector> {
    let v = v.unwrap_or(&[0.0, 0.0, 1.0]);
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(norm.is_finite() && norm > 0.0) {
        bail!("strategy vector {v:?} has no direction");
    }
    Ok(StrategyVector::new(v.iter().map(|x| x / norm).collect())?)
}

fn four(v: Option<&[f64]>, default: [f64; 4]) -> Result<[f64; 4]> {
    match v {
        None => Ok(default),
        Some(v) => v.try_into().map_err(|_| anyhow::anyhow!("expected four values, got {}", v.len())),
    }
}

#[derive(Serialize)]
struct SimulateOut {
    seed: u64,
    born_payoff: Option<f64>,
    frequency_deviation: Option<f64>,
    frequency_bound: f64,
    report: SimReport,
}

pub fn simulate(ctx: &Context, args: &SimulateArgs) -> Result<ExitCode> {
    let spec = args.game.spec(&ctx.file)?;
    let rounds = args.rounds.or(ctx.file.simulation.as_ref().and_then(|s| s.rounds)).unwrap_or(100_000);
    let mode = match args.mode {
        ModeArg::Quantum => SimMode::Quantum,
        ModeArg::Mechanical => SimMode::Mechanical,
    };
    let game = match spec {
        GameSpec::Half(_) => GameKind::SpinHalf,
        GameSpec::One(_) => GameKind::SpinOne,
    };
    let cfg = SimConfig {
        risk_policy: match args.risk_policy {
            RiskArg::AlwaysRisk => RiskPolicy::AlwaysRisk,
            RiskArg::NeverRisk => RiskPolicy::NeverRisk,
        },
        trace: args.trace.is_some(),
        ..SimConfig::new(rounds, ctx.seed(), mode, game)
    };
    let started = Instant::now();
    let (mut report, born_payoff, deviation) = match (spec, mode) {
        (GameSpec::Half(s), SimMode::Quantum) => {
            let r = simulate_quantum_half(&s, args.alpha, args.beta, &cfg)?;
            let dev = frequency_check(&r, &born_conditionals_half(&s, args.alpha, args.beta))?;
            (r, Some(expected_payoff_half(&s, args.alpha, args.beta)), Some(dev))
        }
        (GameSpec::Half(s), SimMode::Mechanical) => {
            let base = four(args.base.as_deref(), unperturbed_frequencies())?;
            let policy = four(args.policy.as_deref(), [0.25; 4])?;
            (simulate_mechanical_half(&s, base, policy, &cfg)?, None, None)
        }
        (GameSpec::One(s), SimMode::Quantum) => {
            let phi = unit_vector(args.phi.as_deref())?;
            let psi = unit_vector(args.psi.as_deref())?;
            let r = simulate_quantum_one(&s, &phi, &psi, &cfg)?;
            let dev = frequency_check(&r, &born_conditionals_one(&s, &phi, &psi)?)?;
            (r, Some(expected_payoff_one(&s, &phi, &psi)?), Some(dev))
        }
        (GameSpec::One(_), SimMode::Mechanical) => bail!("mechanical mode is available for the spin-half game only"),
    };
    ctx.log(format!("{rounds} rounds in {:?}", started.elapsed()));
    if let Some(path) = &args.trace {
        let rows = std::mem::take(&mut report.trace).into_iter().map(|t| {
            vec![
                t.round.to_string(),
                t.context,
                t.question.to_string(),
                t.second.map(|s| s.to_string()).unwrap_or_default(),
                t.position.to_string(),
                serde_json::to_value(t.answer).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                num(t.payoff),
            ]
        });
        write_csv(Some(path), &["round", "context", "question", "second", "position", "answer", "payoff"], rows)?;
    }
    let out = SimulateOut {
        seed: cfg.seed,
        born_payoff,
        frequency_deviation: deviation,
        frequency_bound: 4.0 / (rounds as f64).sqrt(),
        report,
    };
    match ctx.global.format {
        Format::Json => write_json(ctx.out(), &out)?,
        Format::Csv => write_csv(
            ctx.out(),
            &["context", "rounds", "question", "asked", "no_answers", "no_frequency"],
            out.report.per_context.iter().flat_map(|(name, c)| {
                c.question_counts.iter().map(move |(q, n)| {
                    vec![
                        name.clone(),
                        c.rounds.to_string(),
                        q.to_string(),
                        n.to_string(),
                        c.no_answers.get(q).copied().unwrap_or(0).to_string(),
                        num(c.no_frequency[q]),
                    ]
                })
            }),
        )?,
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// interference

#[derive(Args, Debug)]
pub struct InterferenceArgs {
    /// Strategy angle in degrees
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Angle of the conditioning context in degrees (0 < θ < 90)
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Decompose the context vector through the coordinate basis instead
    #[arg(long)]
    pub swapped: bool,
    /// CSV over the whole (beta, theta) grid
    #[arg(long)]
    pub sweep: bool,
    /// Grid step in degrees for --sweep
    #[arg(long, default_value_t = 1.0)]
    pub step: f64,
}

const INTERFERENCE_HEADER: [&str; 6] = ["beta", "theta", "direct", "classical_sum", "interference", "lambda"];

fn interference_row(beta: f64, theta: f64, r: &InterferenceReport) -> Vec<String> {
    vec![num(beta), num(theta), num(r.direct), num(r.classical_sum), num(r.interference_term), opt(r.lambda)]
}

pub fn interference(ctx: &Context, args: &InterferenceArgs) -> Result<ExitCode> {
    let decompose = |b: f64, t: f64| {
        if args.swapped {
            interference_decomposition_swapped(b, t)
        } else {
            interference_decomposition(b, t)
        }
    };
    if args.sweep {
        if !(args.step > 0.0 && args.step < 90.0) {
            bail!("--step must lie in (0, 90)");
        }
        let nb = (180.0 / args.step).ceil() as usize;
        let nt = (90.0 / args.step).ceil() as usize;
        let mut rows = Vec::new();
        for i in 0..nb {
            for j in 1..nt {
                let (b, t) = (i as f64 * args.step, j as f64 * args.step);
                if b >= 180.0 || t >= 90.0 {
                    continue;
                }
                rows.push(interference_row(b, t, &decompose(b, t)?));
            }
        }
        write_csv(ctx.out(), &INTERFERENCE_HEADER, rows)?;
        return Ok(ExitCode::SUCCESS);
    }
    let (Some(beta), Some(theta)) = (args.beta, args.theta) else {
        bail!("give --beta and --theta, or --sweep");
    };
    let r = decompose(beta, theta)?;
    match ctx.global.format {
        Format::Json => write_json(ctx.out(), &json!({ "beta": beta, "theta": theta, "swapped": args.swapped, "report": r }))?,
        Format::Csv => write_csv(ctx.out(), &INTERFERENCE_HEADER, [interference_row(beta, theta, &r)])?,
    }
    Ok(ExitCode::SUCCESS)
}
