//! Monte Carlo play of the repeated games.
//!
//! Quantum mode samples questions and positions from Born conditionals
//! inside a randomly drawn context. Mechanical mode keeps an explicit ball
//! and lets Bob react to each question by the adjacency rule.
//!
//! Draw order per round is fixed: context, question, position, risk.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::games::{half_profile, SpinHalfGameSpec, SpinOneGameSpec, SpinOneProfile, SpinOneRow};
use crate::hilbert::StrategyVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimMode {
    Quantum,
    Mechanical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GameKind {
    SpinHalf,
    SpinOne,
}

/// Whether Alice follows a first "no" in the spin-1 game with a second
/// question (risking the `u` payoff for a `v` payoff).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RiskPolicy {
    AlwaysRisk,
    #[default]
    NeverRisk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    pub rounds: u64,
    pub seed: u64,
    pub mode: SimMode,
    pub game: GameKind,
    #[serde(default)]
    pub risk_policy: RiskPolicy,
    /// Keep a per-round trace in the report.
    #[serde(default)]
    pub trace: bool,
}

impl SimConfig {
    pub fn new(rounds: u64, seed: u64, mode: SimMode, game: GameKind) -> Self {
        Self { rounds, seed, mode, game, risk_policy: RiskPolicy::default(), trace: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(Error::InvalidInput("rounds must be at least 1".into()));
        }
        Ok(())
    }

    fn expect(&self, mode: SimMode, game: GameKind) -> Result<()> {
        self.validate()?;
        if self.mode != mode || self.game != game {
            return Err(Error::ModeMismatch(format!(
                "config is {:?}/{:?}, simulator needs {:?}/{:?}",
                self.mode, self.game, mode, game
            )));
        }
        Ok(())
    }
}

/// Tallies for one context (a diagonal of the square, or a spin-1 basis).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ContextStats {
    pub rounds: u64,
    /// First questions asked.
    pub question_counts: BTreeMap<u8, u64>,
    /// Bob's position before any reaction.
    pub position_counts: BTreeMap<u8, u64>,
    /// "No" answers to the first question, by question.
    pub no_answers: BTreeMap<u8, u64>,
    /// `no_answers / question_counts`.
    pub no_frequency: BTreeMap<u8, f64>,
    /// Positions revealed by a "no" answer.
    pub revealed: BTreeMap<u8, u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub round: u64,
    pub context: String,
    pub question: u8,
    pub second: Option<u8>,
    pub position: u8,
    pub answer: Answer,
    pub payoff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub mode: SimMode,
    pub game: GameKind,
    pub mean_payoff: f64,
    pub std_error: f64,
    pub per_context: BTreeMap<String, ContextStats>,
    pub rounds_executed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceRow>,
}

/// Expected conditional distributions within one context.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExpectedConditionals {
    pub questions: BTreeMap<u8, f64>,
    pub positions: BTreeMap<u8, f64>,
}

fn check_vertex(v: u8) -> Result<()> {
    if v > 4 {
        return Err(Error::InvalidInput(format!("vertex {v} is not one of 0..=4")));
    }
    Ok(())
}

/// The square vertex across the diagonal; 0 has none.
pub fn opposite(v: u8) -> Option<u8> {
    match v {
        1..=4 => Some((v + 1) % 4 + 1),
        _ => None,
    }
}

/// Vertices 1..4 form the square 1–2–3–4; vertex 0 is isolated.
pub fn adjacent(a: u8, b: u8) -> bool {
    (1..=4).contains(&a) && (1..=4).contains(&b) && a != b && opposite(a) != Some(b)
}

/// Bob's reaction to "are you at `question`?" with the ball at `position`.
pub fn reaction(position: u8, question: u8) -> Result<(Answer, u8)> {
    check_vertex(position)?;
    check_vertex(question)?;
    Ok(if question == position {
        (Answer::Yes, position)
    } else if adjacent(position, question) {
        (Answer::Yes, question)
    } else {
        (Answer::No, position)
    })
}

/// The atom whose position a "no" to disjunction question `q` reveals.
pub fn disjunction_complement(q: u8) -> Option<u8> {
    match q {
        5 => Some(0),
        6 => Some(3),
        7 => Some(4),
        8 => Some(1),
        9 => Some(2),
        _ => None,
    }
}

/// Outcome of one spin-1 round in which Bob starts at `position` and Alice
/// plays `row`: the first answer and Alice's payoff.
///
/// Atom questions go through [`reaction`]. A "no" to a disjunction question
/// pins Bob to its complement atom and he does not move. After a first "no"
/// the safe row pays `u_k`; the risky row asks the second atom and pays `v`
/// at the (then determined) position if that answer is also "no".
pub fn protocol_outcome(spec: &SpinOneGameSpec, row: SpinOneRow, position: u8) -> Result<(Answer, f64)> {
    check_vertex(position)?;
    if let Some(atom) = disjunction_complement(row.first) {
        if row.second.is_some() {
            return Err(Error::InvalidInput(format!("disjunction question {} takes no second question", row.first)));
        }
        return Ok(if position == atom { (Answer::No, spec.v[atom as usize]) } else { (Answer::Yes, 0.0) });
    }
    let (first, pos) = reaction(position, row.first)?;
    if first == Answer::Yes {
        return Ok((Answer::Yes, 0.0));
    }
    let payoff = match row.second {
        None => spec.u[row.first as usize],
        Some(s) if s == row.first => return Err(Error::InvalidInput(format!("second question repeats {s}"))),
        Some(s) => match reaction(pos, s)? {
            (Answer::No, p) => spec.v[p as usize],
            (Answer::Yes, _) => 0.0,
        },
    };
    Ok((Answer::No, payoff))
}

struct Accumulator {
    contexts: BTreeMap<String, ContextStats>,
    sum: f64,
    sum_sq: f64,
    n: u64,
    trace: Option<Vec<TraceRow>>,
}

impl Accumulator {
    fn new(contexts: &[&str], trace: bool) -> Self {
        Self {
            contexts: contexts.iter().map(|c| (c.to_string(), ContextStats::default())).collect(),
            sum: 0.0,
            sum_sq: 0.0,
            n: 0,
            trace: trace.then(Vec::new),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn record(&mut self, ctx: &str, question: u8, second: Option<u8>, position: u8, answer: Answer, payoff: f64, sample: f64) {
        let stats = self.contexts.get_mut(ctx).expect("known context");
        stats.rounds += 1;
        *stats.question_counts.entry(question).or_default() += 1;
        *stats.position_counts.entry(position).or_default() += 1;
        if answer == Answer::No {
            *stats.no_answers.entry(question).or_default() += 1;
            *stats.revealed.entry(position).or_default() += 1;
        }
        if let Some(t) = self.trace.as_mut() {
            t.push(TraceRow { round: self.n, context: ctx.to_string(), question, second, position, answer, payoff });
        }
        self.sum += sample;
        self.sum_sq += sample * sample;
        self.n += 1;
    }

    fn finish(mut self, mode: SimMode, game: GameKind) -> SimReport {
        let n = self.n as f64;
        let mean = self.sum / n;
        let var = if self.n > 1 { ((self.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
        for stats in self.contexts.values_mut() {
            stats.no_frequency = stats
                .question_counts
                .iter()
                .map(|(q, &c)| (*q, *stats.no_answers.get(q).unwrap_or(&0) as f64 / c as f64))
                .collect();
        }
        SimReport {
            mode,
            game,
            mean_payoff: mean,
            std_error: (var / n).sqrt(),
            per_context: self.contexts,
            rounds_executed: self.n,
            trace: self.trace.unwrap_or_default(),
        }
    }
}

const HALF_CONTEXTS: [(&str, [u8; 2]); 2] = [("13", [1, 3]), ("24", [2, 4])];

fn half_context_of(question: u8) -> &'static str {
    if question % 2 == 1 {
        "13"
    } else {
        "24"
    }
}

fn check_distribution(name: &str, p: &[f64; 4]) -> Result<()> {
    let total: f64 = p.iter().sum();
    if p.iter().any(|x| !(0.0..=1.0).contains(x)) || (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(format!("{name} {p:?} is not a probability distribution")));
    }
    Ok(())
}

fn draw_index(rng: &mut ChaCha8Rng, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    let r = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if r < acc {
            return i;
        }
    }
    // roundoff at the top end: last index with positive weight
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(weights.len() - 1)
}

/// Spin-½ game with Alice at angle `alpha_deg` and Bob at `beta_deg`.
///
/// The context is uniform over the two diagonals; the reported mean is twice
/// the per-round average, so its expectation is the full Born payoff.
pub fn simulate_quantum_half(spec: &SpinHalfGameSpec, alpha_deg: f64, beta_deg: f64, cfg: &SimConfig) -> Result<SimReport> {
    cfg.expect(SimMode::Quantum, GameKind::SpinHalf)?;
    let p = half_profile(alpha_deg, spec.theta_a);
    let q = half_profile(beta_deg, spec.theta_b);
    let h = spec.payoff_table();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut acc = Accumulator::new(&["13", "24"], cfg.trace);
    for _ in 0..cfg.rounds {
        let (ctx, [first, second]) = HALF_CONTEXTS[usize::from(rng.gen::<f64>() >= 0.5)];
        let i = (first - 1) as usize;
        let question = if rng.gen::<f64>() < p[i] { first } else { second };
        let position = if rng.gen::<f64>() < q[i] { first } else { second };
        let answer = if question == position { Answer::Yes } else { Answer::No };
        let payoff = h[(question - 1) as usize][(position - 1) as usize];
        acc.record(ctx, question, None, position, answer, payoff, 2.0 * payoff);
    }
    Ok(acc.finish(SimMode::Quantum, GameKind::SpinHalf))
}

/// Spin-½ game with an explicit ball: Bob starts per `base_freqs` (positions
/// 1..4), Alice asks per `question_policy` (questions 1..4), Bob reacts.
pub fn simulate_mechanical_half(
    spec: &SpinHalfGameSpec,
    base_freqs: [f64; 4],
    question_policy: [f64; 4],
    cfg: &SimConfig,
) -> Result<SimReport> {
    cfg.expect(SimMode::Mechanical, GameKind::SpinHalf)?;
    check_distribution("base frequencies", &base_freqs)?;
    check_distribution("question policy", &question_policy)?;
    let h = spec.payoff_table();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut acc = Accumulator::new(&["13", "24"], cfg.trace);
    for _ in 0..cfg.rounds {
        let question = draw_index(&mut rng, &question_policy) as u8 + 1;
        let position = draw_index(&mut rng, &base_freqs) as u8 + 1;
        let (answer, _moved) = reaction(position, question)?;
        let payoff = match answer {
            Answer::No => h[(question - 1) as usize][(position - 1) as usize],
            Answer::Yes => 0.0,
        };
        acc.record(half_context_of(question), question, None, position, answer, payoff, payoff);
    }
    Ok(acc.finish(SimMode::Mechanical, GameKind::SpinHalf))
}

const ONE_CONTEXTS: [&str; 2] = ["013", "024"];

// basis context of a first question; 0 and 5 belong to both
fn one_context_of(question: u8) -> Option<usize> {
    match question {
        1 | 3 | 6 | 8 => Some(0),
        2 | 4 | 7 | 9 => Some(1),
        _ => None,
    }
}

/// Spin-1 game with Alice at `phi` (angle θ_A) and Bob at `psi` (θ_B).
///
/// Alice's first question `k` is drawn with probability `p_k / 5` (the ten
/// Born weights always sum to 5). Questions 0 and 5 lie in both bases and
/// take the basis from a fair context draw. Bob's start is drawn from his
/// Born conditional in that basis. Under [`RiskPolicy::AlwaysRisk`] a first
/// "no" to an atom question is followed by a uniformly chosen second atom.
pub fn simulate_quantum_one(spec: &SpinOneGameSpec, phi: &StrategyVector, psi: &StrategyVector, cfg: &SimConfig) -> Result<SimReport> {
    cfg.expect(SimMode::Quantum, GameKind::SpinOne)?;
    let p = SpinOneProfile::from_strategy(spec.theta_a, phi)?.0;
    let q = SpinOneProfile::from_strategy(spec.theta_b, psi)?.0;
    let bases: [[u8; 3]; 2] = [[0, 1, 3], [0, 2, 4]];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut acc = Accumulator::new(&ONE_CONTEXTS, cfg.trace);
    for _ in 0..cfg.rounds {
        let bit = usize::from(rng.gen::<f64>() >= 0.5);
        let question = draw_index(&mut rng, &p) as u8;
        let ctx = one_context_of(question).unwrap_or(bit);
        let basis = bases[ctx];
        let weights = basis.map(|v| q[v as usize]);
        let position = basis[draw_index(&mut rng, &weights)];
        let risk = rng.gen_range(0..4u8);
        let second = match cfg.risk_policy {
            RiskPolicy::AlwaysRisk if question < 5 => {
                // the four atoms other than the first, in increasing order
                Some((0..5u8).filter(|&s| s != question).nth(risk as usize).expect("four choices"))
            }
            _ => None,
        };
        let (answer, payoff) = protocol_outcome(spec, SpinOneRow { first: question, second }, position)?;
        acc.record(ONE_CONTEXTS[ctx], question, second, position, answer, payoff, payoff);
    }
    Ok(acc.finish(SimMode::Quantum, GameKind::SpinOne))
}

/// Bob holding a fixed planar strategy while questions arrive one at a time.
///
/// Each question fixes its diagonal; Bob's position on that diagonal is
/// drawn from his Born conditional.
pub struct BornBob {
    q: [f64; 4],
    rng: ChaCha8Rng,
}

impl BornBob {
    pub fn new(beta_deg: f64, theta_b: f64, seed: u64) -> Self {
        Self { q: half_profile(beta_deg, theta_b), rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Answer to "are you at `question`?" (1..=4) and Bob's position.
    pub fn answer(&mut self, question: u8) -> Result<(Answer, u8)> {
        if !(1..=4).contains(&question) {
            return Err(Error::InvalidInput(format!("question {question} is not one of 1..=4")));
        }
        let other = opposite(question).expect("square vertex");
        let position = if self.rng.gen::<f64>() < self.q[(question - 1) as usize] { question } else { other };
        Ok((if position == question { Answer::Yes } else { Answer::No }, position))
    }
}

/// Born conditionals of question and position inside each spin-½ context.
pub fn born_conditionals_half(spec: &SpinHalfGameSpec, alpha_deg: f64, beta_deg: f64) -> BTreeMap<String, ExpectedConditionals> {
    let p = half_profile(alpha_deg, spec.theta_a);
    let q = half_profile(beta_deg, spec.theta_b);
    HALF_CONTEXTS
        .iter()
        .map(|(ctx, pair)| {
            let cond = |w: &[f64; 4]| pair.iter().map(|&v| (v, w[(v - 1) as usize])).collect();
            (ctx.to_string(), ExpectedConditionals { questions: cond(&p), positions: cond(&q) })
        })
        .collect()
}

/// Born conditionals of first question and position inside each spin-1 basis
/// under the question policy of [`simulate_quantum_one`].
pub fn born_conditionals_one(
    spec: &SpinOneGameSpec,
    phi: &StrategyVector,
    psi: &StrategyVector,
) -> Result<BTreeMap<String, ExpectedConditionals>> {
    let p = SpinOneProfile::from_strategy(spec.theta_a, phi)?.0;
    let q = SpinOneProfile::from_strategy(spec.theta_b, psi)?.0;
    let members: [([u8; 4], [u8; 3]); 2] = [([1, 3, 6, 8], [0, 1, 3]), ([2, 4, 7, 9], [0, 2, 4])];
    Ok(ONE_CONTEXTS
        .iter()
        .zip(members)
        .map(|(ctx, (own, basis))| {
            // shared questions 0 and 5 arrive here half of the time
            let mut questions: BTreeMap<u8, f64> = [(0u8, p[0] / 2.0), (5, p[5] / 2.0)].into_iter().collect();
            questions.extend(own.iter().map(|&k| (k, p[k as usize])));
            let total: f64 = questions.values().sum();
            questions.values_mut().for_each(|w| *w /= total);
            let positions = basis.iter().map(|&v| (v, q[v as usize])).collect();
            (ctx.to_string(), ExpectedConditionals { questions, positions })
        })
        .collect())
}

/// Largest absolute gap between empirical and expected conditional
/// frequencies over every context present in `expected`.
pub fn frequency_check(report: &SimReport, expected: &BTreeMap<String, ExpectedConditionals>) -> Result<f64> {
    if report.mode != SimMode::Quantum {
        return Err(Error::ModeMismatch("frequency check needs a quantum-mode report".into()));
    }
    let mut worst: f64 = 0.0;
    for (ctx, exp) in expected {
        let stats = report
            .per_context
            .get(ctx)
            .ok_or_else(|| Error::InvalidInput(format!("report has no context {ctx}")))?;
        if stats.rounds == 0 {
            continue;
        }
        let n = stats.rounds as f64;
        for (counts, dist) in [(&stats.question_counts, &exp.questions), (&stats.position_counts, &exp.positions)] {
            for (k, &e) in dist {
                let emp = *counts.get(k).unwrap_or(&0) as f64 / n;
                worst = worst.max((emp - e).abs());
            }
            // mass the expectation does not allow at all
            for (k, &c) in counts {
                if !dist.contains_key(k) {
                    worst = worst.max(c as f64 / n);
                }
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{expected_payoff_half, payoff_matrix_one, spin_one_rows};
    use proptest::prelude::*;

    fn half_cfg(rounds: u64, seed: u64) -> SimConfig {
        SimConfig::new(rounds, seed, SimMode::Quantum, GameKind::SpinHalf)
    }

    #[test]
    fn reaction_examples() {
        assert_eq!(reaction(2, 1).unwrap(), (Answer::Yes, 1));
        assert_eq!(reaction(4, 1).unwrap(), (Answer::Yes, 1));
        assert_eq!(reaction(3, 1).unwrap(), (Answer::No, 3));
        for k in 0..5 {
            assert_eq!(reaction(k, k).unwrap(), (Answer::Yes, k));
        }
        assert_eq!(reaction(0, 2).unwrap(), (Answer::No, 0));
        assert_eq!(reaction(2, 0).unwrap(), (Answer::No, 2));
        assert!(reaction(5, 1).is_err());
        assert!(reaction(1, 7).is_err());
    }

    #[test]
    fn protocol_reproduces_the_spin_one_table() {
        let spec = SpinOneGameSpec { u: [1.0, 2.0, 3.0, 4.0, 5.0], v: [10.0, 20.0, 30.0, 40.0, 50.0], ..SpinOneGameSpec::demo() };
        let m = payoff_matrix_one(&spec);
        for (i, row) in spin_one_rows().into_iter().enumerate() {
            for pos in 0..5u8 {
                let (_, payoff) = protocol_outcome(&spec, row, pos).unwrap();
                assert_eq!(payoff, m.get(i, pos as usize), "row {row}, Bob at {pos}");
            }
        }
    }

    #[test]
    fn eigenstate_questions() {
        let spec = SpinOneGameSpec::demo();
        assert_eq!(protocol_outcome(&spec, SpinOneRow { first: 0, second: None }, 0).unwrap(), (Answer::Yes, 0.0));
        assert_eq!(protocol_outcome(&spec, SpinOneRow { first: 5, second: None }, 0).unwrap(), (Answer::No, spec.v[0]));
        assert!(protocol_outcome(&spec, SpinOneRow { first: 5, second: Some(1) }, 0).is_err());
    }

    #[test]
    fn alpha_zero_always_asks_one_in_its_context() {
        let r = simulate_quantum_half(&SpinHalfGameSpec::symmetric_unit(), 0.0, 0.0, &half_cfg(10_000, 3)).unwrap();
        let c13 = &r.per_context["13"];
        assert_eq!(c13.question_counts.get(&1).copied(), Some(c13.rounds));
        assert_eq!(c13.question_counts.get(&3), None);
        assert_eq!(r.per_context.values().map(|c| c.rounds).sum::<u64>(), 10_000);
    }

    #[test]
    fn zero_payoffs_give_zero_mean() {
        let spec = SpinHalfGameSpec { a: 0.0, b: 0.0, c: 0.0, d: 0.0, ..SpinHalfGameSpec::symmetric_unit() };
        let r = simulate_quantum_half(&spec, 20.0, 70.0, &half_cfg(1000, 1)).unwrap();
        assert_eq!(r.mean_payoff, 0.0);
        assert_eq!(r.std_error, 0.0);

        let spec = SpinOneGameSpec { u: [0.0; 5], v: [0.0; 5], ..SpinOneGameSpec::demo() };
        let phi = StrategyVector::spherical(30.0, 40.0);
        let cfg = SimConfig { risk_policy: RiskPolicy::AlwaysRisk, ..SimConfig::new(1000, 1, SimMode::Quantum, GameKind::SpinOne) };
        assert_eq!(simulate_quantum_one(&spec, &phi, &phi, &cfg).unwrap().mean_payoff, 0.0);
    }

    #[test]
    fn symmetric_mean_and_frequencies() {
        let spec = SpinHalfGameSpec::symmetric_unit();
        let r = simulate_quantum_half(&spec, 0.0, 0.0, &half_cfg(200_000, 11)).unwrap();
        assert!((r.mean_payoff - 0.5).abs() <= 3.0 * r.std_error, "{} ± {}", r.mean_payoff, r.std_error);
        let dev = frequency_check(&r, &born_conditionals_half(&spec, 0.0, 0.0)).unwrap();
        assert!(dev <= 4.0 / (200_000f64).sqrt());
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let spec = SpinHalfGameSpec::symmetric_unit();
        let mech = SimConfig::new(10, 1, SimMode::Mechanical, GameKind::SpinHalf);
        assert!(matches!(simulate_quantum_half(&spec, 0.0, 0.0, &mech), Err(Error::ModeMismatch(_))));
        let r = simulate_mechanical_half(&spec, [0.25; 4], [0.25; 4], &mech).unwrap();
        assert!(matches!(frequency_check(&r, &BTreeMap::new()), Err(Error::ModeMismatch(_))));
        assert!(simulate_quantum_half(&spec, 0.0, 0.0, &half_cfg(0, 1)).is_err());
    }

    #[test]
    fn single_round_deviation_is_at_most_one() {
        let spec = SpinHalfGameSpec::symmetric_unit();
        let r = simulate_quantum_half(&spec, 33.0, 12.0, &half_cfg(1, 9)).unwrap();
        let dev = frequency_check(&r, &born_conditionals_half(&spec, 33.0, 12.0)).unwrap();
        assert!((0.0..=1.0).contains(&dev));
    }

    #[test]
    fn perfect_agreement_is_zero() {
        let spec = SpinHalfGameSpec::symmetric_unit();
        let r = simulate_quantum_half(&spec, 0.0, 45.0, &half_cfg(1000, 2)).unwrap();
        // conditionals built from the report itself
        let expected: BTreeMap<String, ExpectedConditionals> = r
            .per_context
            .iter()
            .map(|(k, s)| {
                let n = s.rounds as f64;
                let f = |m: &BTreeMap<u8, u64>| m.iter().map(|(a, &c)| (*a, c as f64 / n)).collect();
                (k.clone(), ExpectedConditionals { questions: f(&s.question_counts), positions: f(&s.position_counts) })
            })
            .collect();
        assert_eq!(frequency_check(&r, &expected).unwrap(), 0.0);
    }

    #[test]
    fn mechanical_catch_rates() {
        let spec = SpinHalfGameSpec::symmetric_unit();
        let base = crate::contextual::unperturbed_frequencies();
        let cfg = SimConfig::new(100_000, 5, SimMode::Mechanical, GameKind::SpinHalf);
        let r = simulate_mechanical_half(&spec, base, [1.0, 0.0, 0.0, 0.0], &cfg).unwrap();
        assert_eq!(r.per_context["13"].no_frequency[&1], 0.0);
        let r = simulate_mechanical_half(&spec, base, [0.0, 1.0, 0.0, 0.0], &cfg).unwrap();
        let f = r.per_context["24"].no_frequency[&2];
        assert!((f - 0.25).abs() <= 3.0 * (0.25f64 * 0.75 / 1e5).sqrt());
        // revealed positions come only from "no" answers, at the opposite vertex
        let c = &r.per_context["24"];
        assert_eq!(c.revealed.values().sum::<u64>(), c.no_answers.values().sum::<u64>());
        assert!(c.revealed.keys().all(|&p| p == 4));

        let r = simulate_mechanical_half(&spec, [0.0, 0.0, 1.0, 0.0], [1.0, 0.0, 0.0, 0.0], &cfg).unwrap();
        assert_eq!(r.per_context["13"].no_frequency[&1], 1.0);
    }

    #[test]
    fn spin_one_eigenstate_rounds() {
        let spec = SpinOneGameSpec::demo();
        let up = StrategyVector::new(vec![0.0, 0.0, 1.0]).unwrap();
        let cfg = SimConfig::new(5000, 4, SimMode::Quantum, GameKind::SpinOne);
        let r = simulate_quantum_one(&spec, &up, &up, &cfg).unwrap();
        for stats in r.per_context.values() {
            assert!(stats.position_counts.keys().all(|&p| p == 0));
            // question 0 always hits; the plane 5 is the only disjunction missing 0
            assert_eq!(stats.no_answers.get(&0), None);
            if let Some(&n5) = stats.question_counts.get(&5) {
                assert_eq!(stats.no_answers.get(&5).copied().unwrap_or(0), n5);
            }
        }
        assert_eq!(r.per_context.values().map(|c| c.revealed.keys().filter(|&&p| p != 0).count()).sum::<usize>(), 0);
    }

    #[test]
    fn spin_one_frequencies() {
        let spec = SpinOneGameSpec::demo();
        let phi = StrategyVector::spherical(50.0, 20.0);
        let psi = StrategyVector::spherical(70.0, 130.0);
        for risk_policy in [RiskPolicy::NeverRisk, RiskPolicy::AlwaysRisk] {
            let cfg = SimConfig { risk_policy, ..SimConfig::new(200_000, 8, SimMode::Quantum, GameKind::SpinOne) };
            let r = simulate_quantum_one(&spec, &phi, &psi, &cfg).unwrap();
            let dev = frequency_check(&r, &born_conditionals_one(&spec, &phi, &psi).unwrap()).unwrap();
            assert!(dev <= 4.0 / (100_000f64).sqrt(), "{dev}");
            let ctx_share = r.per_context["013"].rounds as f64 / 200_000.0;
            assert!((ctx_share - 0.5).abs() < 0.01);
        }
    }

    #[test]
    fn deterministic_and_traceable() {
        let spec = SpinHalfGameSpec::asymmetric(1.0);
        let cfg = SimConfig { trace: true, ..half_cfg(500, 42) };
        let a = simulate_quantum_half(&spec, 145.5, 59.5, &cfg).unwrap();
        let b = simulate_quantum_half(&spec, 145.5, 59.5, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.trace.len(), 500);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<SimReport>(&json).unwrap(), a);
        let c = simulate_quantum_half(&spec, 145.5, 59.5, &half_cfg(500, 43)).unwrap();
        assert_ne!(a.mean_payoff, c.mean_payoff);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(5))]

        #[test]
        fn quantum_half_is_unbiased(
            a in 0.5f64..4.0, c in 0.5f64..4.0, d in 0.5f64..4.0,
            ta in 10.0f64..80.0, tb in 10.0f64..80.0,
            alpha in 0.0f64..180.0, beta in 0.0f64..180.0,
        ) {
            let spec = SpinHalfGameSpec { theta_a: ta, theta_b: tb, a, b: 1.0, c, d };
            let target = expected_payoff_half(&spec, alpha, beta);
            let (mut means, mut var) = (0.0, 0.0);
            let runs = 100;
            for seed in 0..runs {
                let r = simulate_quantum_half(&spec, alpha, beta, &half_cfg(100_000, seed)).unwrap();
                means += r.mean_payoff;
                var += r.std_error * r.std_error;
            }
            let pooled = var.sqrt() / runs as f64;
            prop_assert!((means / runs as f64 - target).abs() <= 4.0 * pooled);
        }
    }
}
