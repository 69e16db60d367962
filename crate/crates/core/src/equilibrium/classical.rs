//! Exact solution of finite zero-sum matrix games by support enumeration.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::games::PayoffMatrix;

const FEAS_TOL: f64 = 1e-9;

/// Optimal mixed strategies of the row (maximizing) and column player.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixedStrategyPair {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub value: f64,
}

impl MixedStrategyPair {
    /// Expected payoff `xᵀ H y` for arbitrary strategies.
    pub fn payoff(m: &PayoffMatrix, x: &[f64], y: &[f64]) -> f64 {
        m.entries
            .iter()
            .zip(x)
            .map(|(row, xi)| xi * row.iter().zip(y).map(|(h, yj)| h * yj).sum::<f64>())
            .sum()
    }
}

/// Solves the zero-sum game with the given row-player payoffs.
///
/// Square supports are enumerated by size, then lexicographically (rows
/// first, then columns). For each nonsingular square block the
/// equalizing strategies are computed and accepted once both players'
/// equilibrium inequalities hold over the full matrix. The payoffs are
/// shifted to be positive first so the game value never vanishes. A
/// constant matrix returns uniform strategies.
pub fn solve_classical(m: &PayoffMatrix) -> Result<MixedStrategyPair> {
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidInput("payoff matrix is empty".into()));
    }
    let min = m.entries.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    let max = m.entries.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
    if !min.is_finite() || !max.is_finite() {
        return Err(Error::InvalidInput("payoff matrix has non-finite entries".into()));
    }
    if min == max {
        return Ok(MixedStrategyPair {
            x: vec![1.0 / rows as f64; rows],
            y: vec![1.0 / cols as f64; cols],
            value: min,
        });
    }
    let shift = 1.0 - min;
    let a = DMatrix::from_fn(rows, cols, |i, j| m.get(i, j) + shift);
    let tol = FEAS_TOL * (max - min).max(1.0);

    for k in 1..=rows.min(cols) {
        for support_rows in Combinations::new(rows, k) {
            for support_cols in Combinations::new(cols, k) {
                if let Some((x, y, v)) = try_support(&a, &support_rows, &support_cols, tol) {
                    return Ok(MixedStrategyPair { x, y, value: v - shift });
                }
            }
        }
    }
    Err(Error::InvalidInput("support enumeration found no equilibrium".into()))
}

fn try_support(a: &DMatrix<f64>, rows: &[usize], cols: &[usize], tol: f64) -> Option<(Vec<f64>, Vec<f64>, f64)> {
    let k = rows.len();
    let block = DMatrix::from_fn(k, k, |i, j| a[(rows[i], cols[j])]);
    let ones = DVector::from_element(k, 1.0);
    let lu = block.clone().lu();
    let ys = lu.solve(&ones)?;
    let xs = block.transpose().lu().solve(&ones)?;
    let total = ys.sum();
    if !total.is_finite() || total.abs() < 1e-14 {
        return None;
    }
    let v = 1.0 / total;
    if !v.is_finite() || v <= 0.0 {
        return None;
    }
    let ys = ys * v;
    let xs = xs * v;
    if ys.iter().chain(xs.iter()).any(|&p| p < -tol || !p.is_finite()) {
        return None;
    }
    let mut x = vec![0.0; a.nrows()];
    let mut y = vec![0.0; a.ncols()];
    for (i, &r) in rows.iter().enumerate() {
        x[r] = xs[i].max(0.0);
    }
    for (j, &c) in cols.iter().enumerate() {
        y[c] = ys[j].max(0.0);
    }
    normalize(&mut x);
    normalize(&mut y);
    // no row beats v against y, no column undercuts v against x
    for i in 0..a.nrows() {
        let r: f64 = (0..a.ncols()).map(|j| a[(i, j)] * y[j]).sum();
        if r > v + tol {
            return None;
        }
    }
    for j in 0..a.ncols() {
        let c: f64 = (0..a.nrows()).map(|i| a[(i, j)] * x[i]).sum();
        if c < v - tol {
            return None;
        }
    }
    Some((x, y, v))
}

fn normalize(p: &mut [f64]) {
    let s: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= s);
}

// k-subsets of 0..n in lexicographic order.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self { n, current: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in (i + 1)..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
