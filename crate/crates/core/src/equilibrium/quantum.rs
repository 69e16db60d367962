//! Saddle points of the Born-rule payoff over pure wavefunction strategies.
//!
//! Both games have the bilinear form `F(φ, ψ) = Σ C_ik ⟨A_i φ, φ⟩ ⟨B_k ψ, ψ⟩`.
//! For a fixed opponent strategy, `F` is a quadratic form in the responder's
//! unit vector, so exact best responses are extreme eigenpairs. The saddle
//! search works on the two envelopes
//!
//! * `L(φ) = min_ψ F(φ, ψ)` (Alice's guaranteed payoff),
//! * `U(ψ) = max_φ F(φ, ψ)` (Bob's guaranteed ceiling),
//!
//! and a pure saddle exists exactly when `max L = min U`.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::games::{
    expected_payoff_half, expected_payoff_one, half_profile, spin_one_coefficients, SpinHalfGameSpec,
    SpinOneGameSpec, SpinOneProfile,
};
use crate::hilbert::{quadratic_form, spin_half_projectors, spin_one_projectors, StrategyVector};

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Tuning of the saddle search, angles in degrees.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchOptions {
    pub coarse_step: f64,
    pub refine_tol: f64,
    /// Certificate tolerance, relative to the total payoff mass `Σ|C_ik|`.
    pub residual_tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { coarse_step: 0.5, refine_tol: 0.01, residual_tol: 1e-6 }
    }
}

impl SearchOptions {
    pub fn new(coarse_step: f64, refine_tol: f64) -> Result<Self> {
        let opts = Self { coarse_step, refine_tol, ..Self::default() };
        opts.validate()?;
        Ok(opts)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.coarse_step > 0.0 && self.coarse_step <= 5.0) {
            return Err(Error::InvalidInput(format!("coarse_step {} must lie in (0°, 5°]", self.coarse_step)));
        }
        if !(self.refine_tol >= 0.001 && self.refine_tol.is_finite()) {
            return Err(Error::InvalidInput(format!("refine_tol {} must be at least 0.001°", self.refine_tol)));
        }
        if !(self.residual_tol >= 0.0 && self.residual_tol.is_finite()) {
            return Err(Error::InvalidInput(format!("residual_tol {} must be non-negative", self.residual_tol)));
        }
        Ok(())
    }
}

/// A certified pure-strategy saddle point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquilibriumResult {
    /// `[α]` in the spin-½ game, direction angles `[α1, α2, α3]` in spin-1.
    pub alice_params: Vec<f64>,
    pub bob_params: Vec<f64>,
    pub alice_strategy: StrategyVector,
    pub bob_strategy: StrategyVector,
    pub value: f64,
    pub p_profile: Vec<f64>,
    pub q_profile: Vec<f64>,
    /// `max(max_φ F(φ, ψ*) − F*, F* − min_ψ F(φ*, ψ))`, computed exactly.
    pub residual: f64,
}

/// Security levels of both players together with the certified saddles.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SaddleAnalysis {
    /// `max_φ min_ψ F`.
    pub lower_value: f64,
    /// `min_ψ max_φ F`.
    pub upper_value: f64,
    /// Alice's maximin strategies (refined local maxima of `L` at the top level).
    pub maximin: Vec<StrategyVector>,
    /// Bob's minimax strategies.
    pub minimax: Vec<StrategyVector>,
    pub equilibria: Vec<EquilibriumResult>,
}

impl SaddleAnalysis {
    pub fn gap(&self) -> f64 {
        self.upper_value - self.lower_value
    }
}

/// Born-rule game with question projectors for each side and coefficient
/// matrix `C` (Alice's questions by Bob's questions).
#[derive(Clone, Debug)]
pub struct BornGame {
    alice: Vec<DMatrix<f64>>,
    bob: Vec<DMatrix<f64>>,
    coef: DMatrix<f64>,
}

impl BornGame {
    pub fn new(alice: Vec<DMatrix<f64>>, bob: Vec<DMatrix<f64>>, coef: DMatrix<f64>) -> Result<Self> {
        if coef.nrows() != alice.len() {
            return Err(Error::DimensionMismatch { expected: alice.len(), got: coef.nrows() });
        }
        if coef.ncols() != bob.len() {
            return Err(Error::DimensionMismatch { expected: bob.len(), got: coef.ncols() });
        }
        let dim = alice.first().map(|m| m.nrows()).unwrap_or(0);
        if dim == 0 || alice.iter().chain(&bob).any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::InvalidInput("question projectors must share one square dimension".into()));
        }
        Ok(Self { alice, bob, coef })
    }

    pub fn half(spec: &SpinHalfGameSpec) -> Result<Self> {
        let alice = spin_half_projectors(spec.theta_a)?.map(|p| p.matrix().clone()).to_vec();
        let bob = spin_half_projectors(spec.theta_b)?.map(|p| p.matrix().clone()).to_vec();
        let h = spec.payoff_table();
        Self::new(alice, bob, DMatrix::from_fn(4, 4, |i, k| h[i][k]))
    }

    pub fn one(spec: &SpinOneGameSpec) -> Result<Self> {
        let alice = spin_one_projectors(spec.theta_a)?.map(|p| p.matrix().clone()).to_vec();
        let bob = spin_one_projectors(spec.theta_b)?.map(|p| p.matrix().clone()).to_vec();
        let c = spin_one_coefficients(spec);
        Self::new(alice, bob, DMatrix::from_fn(10, 10, |i, k| c[i][k]))
    }

    pub fn dim(&self) -> usize {
        self.alice[0].nrows()
    }

    /// `Σ |C_ik|`, an upper bound on `|F|`.
    pub fn scale(&self) -> f64 {
        self.coef.iter().map(|c| c.abs()).sum()
    }

    pub fn alice_profile(&self, phi: &[f64]) -> DVector<f64> {
        DVector::from_iterator(self.alice.len(), self.alice.iter().map(|a| quadratic_form(a, phi)))
    }

    pub fn bob_profile(&self, psi: &[f64]) -> DVector<f64> {
        DVector::from_iterator(self.bob.len(), self.bob.iter().map(|b| quadratic_form(b, psi)))
    }

    pub fn payoff(&self, phi: &[f64], psi: &[f64]) -> f64 {
        self.alice_profile(phi).dot(&(&self.coef * self.bob_profile(psi)))
    }

    /// `K(ψ) = Σ_i (C q)_i A_i`, so that `F(φ, ψ) = φᵀ K(ψ) φ`.
    pub fn alice_operator(&self, psi: &[f64]) -> DMatrix<f64> {
        let w = &self.coef * self.bob_profile(psi);
        weighted_sum(&self.alice, w.as_slice())
    }

    /// `M(φ) = Σ_k (Cᵀ p)_k B_k`, so that `F(φ, ψ) = ψᵀ M(φ) ψ`.
    pub fn bob_operator(&self, phi: &[f64]) -> DMatrix<f64> {
        let w = self.coef.tr_mul(&self.alice_profile(phi));
        weighted_sum(&self.bob, w.as_slice())
    }

    /// Alice's exact best reply to `psi` and the payoff it earns.
    pub fn alice_best(&self, psi: &[f64]) -> (Vec<f64>, f64) {
        extreme_eigen(self.alice_operator(psi), true)
    }

    /// Bob's exact best reply to `phi` and the payoff Alice is held to.
    pub fn bob_best(&self, phi: &[f64]) -> (Vec<f64>, f64) {
        extreme_eigen(self.bob_operator(phi), false)
    }

    /// Exact saddle defect of the pair.
    pub fn residual(&self, phi: &[f64], psi: &[f64]) -> f64 {
        let f = self.payoff(phi, psi);
        let upper = self.alice_best(psi).1;
        let lower = self.bob_best(phi).1;
        (upper - f).max(f - lower).max(0.0)
    }
}

fn weighted_sum(ms: &[DMatrix<f64>], w: &[f64]) -> DMatrix<f64> {
    let n = ms[0].nrows();
    let mut out = DMatrix::zeros(n, n);
    for (m, &wi) in ms.iter().zip(w) {
        if wi != 0.0 {
            out += m * wi;
        }
    }
    out
}

fn extreme_eigen(k: DMatrix<f64>, largest: bool) -> (Vec<f64>, f64) {
    let eig = SymmetricEigen::new(k);
    let vals = &eig.eigenvalues;
    let mut best = 0;
    for i in 1..vals.len() {
        let better = if largest { vals[i] > vals[best] } else { vals[i] < vals[best] };
        if better {
            best = i;
        }
    }
    let v: Vec<f64> = eig.eigenvectors.column(best).iter().copied().collect();
    (canonical(v), vals[best])
}

// v and −v are the same strategy; fix the sign deterministically
fn canonical(mut v: Vec<f64>) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    let pivot = v.iter().rev().find(|x| x.abs() > 1e-12).copied().unwrap_or(1.0);
    if pivot < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

// ---------------------------------------------------------------------------
// Grids over the strategy manifolds

#[derive(Clone, Copy, Debug, PartialEq)]
enum Manifold {
    /// Planar strategies `(cos α, sin α)`, α ∈ [0°, 180°).
    Circle,
    /// Unit vectors with non-negative third component.
    Hemisphere,
}

struct Grid {
    manifold: Manifold,
    step: f64,
    // circle: n_az points; hemisphere: n_polar rings of n_az points
    n_polar: usize,
    n_az: usize,
}

impl Grid {
    fn new(manifold: Manifold, requested_step: f64) -> Self {
        match manifold {
            Manifold::Circle => {
                let n = (180.0 / requested_step).round().max(1.0) as usize;
                Self { manifold, step: 180.0 / n as f64, n_polar: 1, n_az: n }
            }
            Manifold::Hemisphere => {
                let m = (90.0 / requested_step).round().max(1.0) as usize;
                let step = 90.0 / m as f64;
                Self { manifold, step, n_polar: m + 1, n_az: 4 * m }
            }
        }
    }

    fn len(&self) -> usize {
        self.n_polar * self.n_az
    }

    fn vector(&self, idx: usize) -> Vec<f64> {
        match self.manifold {
            Manifold::Circle => StrategyVector::planar(idx as f64 * self.step).components().to_vec(),
            Manifold::Hemisphere => {
                let (j, k) = (idx / self.n_az, idx % self.n_az);
                StrategyVector::spherical(j as f64 * self.step, k as f64 * self.step).components().to_vec()
            }
        }
    }

    fn neighbors(&self, idx: usize) -> Vec<usize> {
        let n = self.n_az;
        match self.manifold {
            Manifold::Circle => vec![(idx + 1) % n, (idx + n - 1) % n],
            Manifold::Hemisphere => {
                let (j, k) = (idx / n, idx % n);
                let mut out = vec![j * n + (k + 1) % n, j * n + (k + n - 1) % n];
                if j > 0 {
                    out.push((j - 1) * n + k);
                }
                if j + 1 < self.n_polar {
                    out.push((j + 1) * n + k);
                } else {
                    // crossing the equator lands on the antipodal azimuth
                    out.push((j - 1) * n + (k + n / 2) % n);
                }
                out
            }
        }
    }
}

fn tangent_basis(v: &[f64]) -> Vec<Vec<f64>> {
    match v {
        [c, s] => vec![vec![-s, *c]],
        [x, y, z] => {
            let axis = [x.abs(), y.abs(), z.abs()]
                .iter()
                .enumerate()
                .fold(0, |b, (i, a)| if *a < [x.abs(), y.abs(), z.abs()][b] { i } else { b });
            let mut e = [0.0; 3];
            e[axis] = 1.0;
            let d = e[0] * x + e[1] * y + e[2] * z;
            let mut e1 = [e[0] - d * x, e[1] - d * y, e[2] - d * z];
            let n = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
            e1.iter_mut().for_each(|c| *c /= n);
            let e2 = [y * e1[2] - z * e1[1], z * e1[0] - x * e1[2], x * e1[1] - y * e1[0]];
            vec![e1.to_vec(), e2.to_vec()]
        }
        _ => unreachable!("strategies live in two or three dimensions"),
    }
}

fn rotate(v: &[f64], e: &[f64], t: f64) -> Vec<f64> {
    let (s, c) = t.sin_cos();
    v.iter().zip(e).map(|(a, b)| a * c + b * s).collect()
}

fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Coordinate-wise golden-section ascent along geodesics through `start`.
fn refine_max(f: &(impl Fn(&[f64]) -> f64 + Sync), start: Vec<f64>, step_rad: f64, tol_rad: f64) -> (Vec<f64>, f64) {
    let mut v = start;
    let mut fv = f(&v);
    for _ in 0..200 {
        let mut moved: f64 = 0.0;
        for e in tangent_basis(&v) {
            let line = |t: f64| f(&rotate(&v, &e, t));
            let (t, ft) = golden_max(&line, -step_rad, step_rad, tol_rad);
            if ft > fv + 1e-13 * (1.0 + fv.abs()) {
                v = canonical(rotate(&v, &e, t));
                fv = ft;
                moved = moved.max(t.abs());
            }
        }
        if moved < tol_rad {
            break;
        }
    }
    (v, fv)
}

/// Refined local maxima of `f` whose value is within the Lipschitz slack of
/// the best grid value, deduplicated and sorted.
fn maximize(
    f: &(impl Fn(&[f64]) -> f64 + Sync),
    manifold: Manifold,
    opts: &SearchOptions,
    lipschitz: f64,
) -> Vec<(Vec<f64>, f64)> {
    let grid = Grid::new(manifold, opts.coarse_step);
    let vals: Vec<f64> = (0..grid.len()).into_par_iter().map(|i| f(&grid.vector(i))).collect();
    let top = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let eps = 1e-12 * (1.0 + top.abs());
    let is_peak: Vec<bool> =
        (0..grid.len()).map(|i| grid.neighbors(i).iter().all(|&n| vals[i] >= vals[n] - eps)).collect();

    // one representative per connected plateau of peaks
    let mut seen = vec![false; grid.len()];
    let mut reps = Vec::new();
    for i in 0..grid.len() {
        if !is_peak[i] || seen[i] {
            continue;
        }
        seen[i] = true;
        reps.push(i);
        let mut queue = VecDeque::from([i]);
        while let Some(c) = queue.pop_front() {
            for n in grid.neighbors(c) {
                if is_peak[n] && !seen[n] && (vals[n] - vals[c]).abs() <= eps {
                    seen[n] = true;
                    queue.push_back(n);
                }
            }
        }
    }
    let step_rad = grid.step.to_radians();
    let slack = lipschitz * std::f64::consts::SQRT_2 * step_rad + eps;
    reps.retain(|&i| vals[i] >= top - slack);

    let tol_rad = opts.refine_tol.to_radians();
    let mut refined: Vec<(Vec<f64>, f64)> =
        reps.par_iter().map(|&i| refine_max(f, grid.vector(i), step_rad, tol_rad)).collect();
    let best = refined.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    refined.retain(|r| r.1 >= best - slack);
    refined.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| cmp_vec(&a.0, &b.0)));

    let same = (2.0 * tol_rad).cos();
    let mut out: Vec<(Vec<f64>, f64)> = Vec::new();
    for r in refined {
        if out.iter().all(|o| dot(&o.0, &r.0).abs() < same) {
            out.push(r);
        }
    }
    out.sort_by(|a, b| cmp_vec(&params_of(&a.0), &params_of(&b.0)));
    out
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cmp_vec(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
}

fn params_of(v: &[f64]) -> Vec<f64> {
    StrategyVector::new(v.to_vec()).map(|s| s.angles()).unwrap_or_default()
}

/// Full saddle analysis for a generic Born game. Strategies are planar for
/// two-dimensional games and hemispherical for three-dimensional ones.
pub fn analyze(game: &BornGame, opts: &SearchOptions) -> Result<SaddleAnalysis> {
    opts.validate()?;
    let manifold = match game.dim() {
        2 => Manifold::Circle,
        3 => Manifold::Hemisphere,
        d => return Err(Error::DimensionMismatch { expected: 3, got: d }),
    };
    let scale = game.scale();
    let lipschitz = 2.0 * scale;
    let floor = |phi: &[f64]| game.bob_best(phi).1;
    let neg_ceiling = |psi: &[f64]| -game.alice_best(psi).1;
    let alice = maximize(&floor, manifold, opts, lipschitz);
    let bob = maximize(&neg_ceiling, manifold, opts, lipschitz);

    let lower = alice.iter().map(|a| a.1).fold(f64::NEG_INFINITY, f64::max);
    let upper = bob.iter().map(|b| -b.1).fold(f64::INFINITY, f64::min);
    let tol = opts.residual_tol * scale;

    let mut equilibria = Vec::new();
    if upper - lower <= tol {
        for (phi, l) in alice.iter().filter(|a| a.1 >= lower - tol) {
            for (psi, neg_u) in bob.iter().filter(|b| -b.1 <= upper + tol) {
                let f = game.payoff(phi, psi);
                let residual = (-neg_u - f).max(f - l).max(0.0);
                if residual <= tol {
                    equilibria.push((phi.clone(), psi.clone(), residual));
                }
            }
        }
    }
    let to_sv = |v: &Vec<f64>| StrategyVector::new(v.clone());
    Ok(SaddleAnalysis {
        lower_value: lower,
        upper_value: upper,
        maximin: alice.iter().filter(|a| a.1 >= lower - tol).map(|a| to_sv(&a.0)).collect::<Result<_>>()?,
        minimax: bob.iter().filter(|b| -b.1 <= upper + tol).map(|b| to_sv(&b.0)).collect::<Result<_>>()?,
        equilibria: equilibria
            .into_iter()
            .map(|(phi, psi, residual)| {
                Ok(EquilibriumResult {
                    alice_params: params_of(&phi),
                    bob_params: params_of(&psi),
                    alice_strategy: to_sv(&phi)?,
                    bob_strategy: to_sv(&psi)?,
                    value: game.payoff(&phi, &psi),
                    p_profile: game.alice_profile(&phi).iter().copied().collect(),
                    q_profile: game.bob_profile(&psi).iter().copied().collect(),
                    residual,
                })
            })
            .collect::<Result<_>>()?,
    })
}

/// Saddle analysis of the spin-½ game with profiles and values taken from
/// the closed-form trigonometric payoff.
pub fn analyze_half(spec: &SpinHalfGameSpec, opts: &SearchOptions) -> Result<SaddleAnalysis> {
    let mut out = analyze(&BornGame::half(spec)?, opts)?;
    for eq in &mut out.equilibria {
        let (a, b) = (eq.alice_params[0], eq.bob_params[0]);
        eq.value = expected_payoff_half(spec, a, b);
        eq.p_profile = half_profile(a, spec.theta_a).to_vec();
        eq.q_profile = half_profile(b, spec.theta_b).to_vec();
    }
    Ok(out)
}

/// Saddle analysis of the spin-1 game with profiles and values taken from
/// the Born-profile payoff formula.
pub fn analyze_one(spec: &SpinOneGameSpec, opts: &SearchOptions) -> Result<SaddleAnalysis> {
    let mut out = analyze(&BornGame::one(spec)?, opts)?;
    for eq in &mut out.equilibria {
        eq.value = expected_payoff_one(spec, &eq.alice_strategy, &eq.bob_strategy)?;
        eq.p_profile = SpinOneProfile::from_strategy(spec.theta_a, &eq.alice_strategy)?.0.to_vec();
        eq.q_profile = SpinOneProfile::from_strategy(spec.theta_b, &eq.bob_strategy)?.0.to_vec();
    }
    Ok(out)
}

/// Certified pure saddle points of the spin-½ game (possibly none).
pub fn saddle_search_half(spec: &SpinHalfGameSpec, coarse_step: f64, refine_tol: f64) -> Result<Vec<EquilibriumResult>> {
    Ok(analyze_half(spec, &SearchOptions::new(coarse_step, refine_tol)?)?.equilibria)
}

/// Certified pure saddle points of the spin-1 game (possibly none).
pub fn saddle_search_one(spec: &SpinOneGameSpec, coarse_step: f64, refine_tol: f64) -> Result<Vec<EquilibriumResult>> {
    Ok(analyze_one(spec, &SearchOptions::new(coarse_step, refine_tol)?)?.equilibria)
}

/// Alice's best planar reply `α` to Bob's fixed `β`, with `F(α, β)`.
pub fn best_response_alice_half(spec: &SpinHalfGameSpec, beta_deg: f64) -> Result<(f64, f64)> {
    let game = BornGame::half(spec)?;
    let (v, _) = game.alice_best(StrategyVector::planar(beta_deg).components());
    let alpha = params_of(&v)[0];
    Ok((alpha, expected_payoff_half(spec, alpha, beta_deg)))
}

/// Bob's best planar reply `β` to Alice's fixed `α`, with `F(α, β)`.
pub fn best_response_bob_half(spec: &SpinHalfGameSpec, alpha_deg: f64) -> Result<(f64, f64)> {
    let game = BornGame::half(spec)?;
    let (v, _) = game.bob_best(StrategyVector::planar(alpha_deg).components());
    let beta = params_of(&v)[0];
    Ok((beta, expected_payoff_half(spec, alpha_deg, beta)))
}

pub fn best_response_alice_one(spec: &SpinOneGameSpec, psi: &StrategyVector) -> Result<(StrategyVector, f64)> {
    let game = BornGame::one(spec)?;
    if psi.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: psi.dim() });
    }
    let phi = StrategyVector::new(game.alice_best(psi.components()).0)?;
    let value = expected_payoff_one(spec, &phi, psi)?;
    Ok((phi, value))
}

pub fn best_response_bob_one(spec: &SpinOneGameSpec, phi: &StrategyVector) -> Result<(StrategyVector, f64)> {
    let game = BornGame::one(spec)?;
    if phi.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: phi.dim() });
    }
    let psi = StrategyVector::new(game.bob_best(phi.components()).0)?;
    let value = expected_payoff_one(spec, phi, &psi)?;
    Ok((psi, value))
}

/// Exact saddle defect of `(α, β)` in the spin-½ game.
pub fn residual_half(spec: &SpinHalfGameSpec, alpha_deg: f64, beta_deg: f64) -> Result<f64> {
    let game = BornGame::half(spec)?;
    Ok(game.residual(StrategyVector::planar(alpha_deg).components(), StrategyVector::planar(beta_deg).components()))
}

/// Exact saddle defect of `(φ, ψ)` in the spin-1 game.
pub fn residual_one(spec: &SpinOneGameSpec, phi: &StrategyVector, psi: &StrategyVector) -> Result<f64> {
    let game = BornGame::one(spec)?;
    Ok(game.residual(phi.components(), psi.components()))
}
