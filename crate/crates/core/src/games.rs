//! Game specifications, payoff matrices and expected-payoff functionals.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{check_open_angle, clamp_probability, quadratic_form, spin_half_projectors, spin_one_projectors, StrategyVector};

/// Spin-½ game: two diagonal angles and the four "no"-answer payoffs.
///
/// `a`: Alice asks 1, Bob at 3. `b`: asks 2, Bob at 4. `c`: asks 3, Bob
/// at 1. `d`: asks 4, Bob at 2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinHalfGameSpec {
    pub theta_a: f64,
    pub theta_b: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl SpinHalfGameSpec {
    pub fn new(theta_a: f64, theta_b: f64, a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let spec = Self { theta_a, theta_b, a, b, c, d };
        spec.validate()?;
        Ok(spec)
    }

    /// θ_A = θ_B = 45°, all payoffs 1.
    pub fn symmetric_unit() -> Self {
        Self { theta_a: 45.0, theta_b: 45.0, a: 1.0, b: 1.0, c: 1.0, d: 1.0 }
    }

    /// θ_A = 10°, θ_B = 70°, a = b = 3, c = 5 with the supplied `d`.
    pub fn asymmetric(d: f64) -> Self {
        Self { theta_a: 10.0, theta_b: 70.0, a: 3.0, b: 3.0, c: 5.0, d }
    }

    pub fn validate(&self) -> Result<()> {
        check_open_angle(self.theta_a)?;
        check_open_angle(self.theta_b)?;
        for (name, v) in [("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidInput(format!("payoff {name} = {v} must be positive")));
            }
        }
        Ok(())
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Self { a: self.a * lambda, b: self.b * lambda, c: self.c * lambda, d: self.d * lambda, ..*self }
    }

    /// Alice's payoff `h[question][position]`, questions and positions 1..=4
    /// stored at indices 0..4.
    pub fn payoff_table(&self) -> [[f64; 4]; 4] {
        let mut h = [[0.0; 4]; 4];
        h[0][2] = self.a;
        h[1][3] = self.b;
        h[2][0] = self.c;
        h[3][1] = self.d;
        h
    }
}

/// Spin-1 game: angles plus the safe payoffs `u` (one "no" answer, no second
/// question) and the exact-guess payoffs `v`, both indexed by vertex 0..=4.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinOneGameSpec {
    pub theta_a: f64,
    pub theta_b: f64,
    pub u: [f64; 5],
    pub v: [f64; 5],
}

impl SpinOneGameSpec {
    pub fn new(theta_a: f64, theta_b: f64, u: [f64; 5], v: [f64; 5]) -> Result<Self> {
        let spec = Self { theta_a, theta_b, u, v };
        spec.validate()?;
        Ok(spec)
    }

    /// Demo values chosen for this library (not taken from any published
    /// table): θ = 45°, every `u` = 1, every `v` = 2.
    pub fn demo() -> Self {
        Self { theta_a: 45.0, theta_b: 45.0, u: [1.0; 5], v: [2.0; 5] }
    }

    pub fn validate(&self) -> Result<()> {
        check_open_angle(self.theta_a)?;
        check_open_angle(self.theta_b)?;
        for (i, x) in self.u.iter().chain(self.v.iter()).enumerate() {
            if !(x.is_finite() && *x > 0.0) {
                let name = if i < 5 { format!("u{i}") } else { format!("v{}", i - 5) };
                return Err(Error::InvalidInput(format!("payoff {name} = {x} must be positive")));
            }
        }
        // a safe payoff must stay below every exact payoff it forgoes
        const ORDER: [(usize, &[usize]); 5] = [(0, &[1, 2, 3, 4]), (1, &[0, 3]), (2, &[0, 4]), (3, &[0, 1]), (4, &[0, 2])];
        for (i, ks) in ORDER {
            for &k in ks {
                if self.u[i] >= self.v[k] {
                    return Err(Error::InvalidInput(format!(
                        "payoff ordering requires u{i} < v{k} ({} ≥ {})",
                        self.u[i], self.v[k]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Self { u: self.u.map(|x| x * lambda), v: self.v.map(|x| x * lambda), ..*self }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PayoffMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<Vec<f64>>,
}

impl PayoffMatrix {
    pub fn new(entries: Vec<Vec<f64>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput("payoff matrix is empty".into()));
        }
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("payoff matrix rows have unequal length".into()));
        }
        if entries.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("payoff matrix has non-finite entries".into()));
        }
        Ok(Self {
            row_labels: (1..=rows).map(|i| i.to_string()).collect(),
            col_labels: (1..=cols).map(|j| j.to_string()).collect(),
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    /// The opponent's matrix in the zero-sum game.
    pub fn negated(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|r| r.iter().map(|v| -v).collect()).collect(),
            ..self.clone()
        }
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows(), self.cols(), |i, j| self.entries[i][j])
    }

    /// CSV with a header row of column labels and a leading label column.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row");
        for c in &self.col_labels {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for (label, row) in self.row_labels.iter().zip(&self.entries) {
            out.push_str(label);
            for v in row {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Alice's 4×4 spin-½ payoff matrix.
pub fn payoff_matrix_half(spec: &SpinHalfGameSpec) -> PayoffMatrix {
    let entries = spec.payoff_table().iter().map(|r| r.to_vec()).collect();
    PayoffMatrix {
        row_labels: (1..=4).map(|q| format!("{q}?")).collect(),
        col_labels: (1..=4).map(|p| p.to_string()).collect(),
        entries,
    }
}

/// Row of the spin-1 payoff table: a first question and, for the risky
/// branches, the second question asked after a "no".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpinOneRow {
    pub first: u8,
    pub second: Option<u8>,
}

impl fmt::Display for SpinOneRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.second {
            None => write!(f, "{}", self.first),
            Some(s) => write!(f, "{}/{}", self.first, s),
        }
    }
}

/// The 30 rows of the spin-1 table, top to bottom: for each atom question
/// 0..=4 the safe row followed by its four second-question rows, then the
/// disjunction questions 5..=9.
pub fn spin_one_rows() -> Vec<SpinOneRow> {
    let mut rows = Vec::with_capacity(30);
    for first in 0..5u8 {
        rows.push(SpinOneRow { first, second: None });
        for second in (0..5u8).filter(|&s| s != first) {
            rows.push(SpinOneRow { first, second: Some(second) });
        }
    }
    rows.extend((5..10u8).map(|first| SpinOneRow { first, second: None }));
    rows
}

/// Alice's 30×5 spin-1 payoff matrix (columns: Bob at 0..=4).
pub fn payoff_matrix_one(spec: &SpinOneGameSpec) -> PayoffMatrix {
    let (u, v) = (spec.u, spec.v);
    let rows = spin_one_rows();
    let entries = rows
        .iter()
        .map(|row| {
            let mut e = vec![0.0; 5];
            match (row.first, row.second) {
                (0, None) => (1..5).for_each(|k| e[k] = u[0]),
                (1, None) => {
                    e[0] = u[1];
                    e[3] = u[1];
                }
                (2, None) => {
                    e[0] = u[2];
                    e[4] = u[2];
                }
                (3, None) => {
                    e[0] = u[3];
                    e[1] = u[3];
                }
                (4, None) => {
                    e[0] = u[4];
                    e[2] = u[4];
                }
                (0, Some(1)) => e[3] = v[3],
                (0, Some(2)) => e[4] = v[4],
                (0, Some(3)) => e[1] = v[1],
                (0, Some(4)) => e[2] = v[2],
                (1, Some(0)) => e[3] = v[3],
                (2, Some(0)) => e[4] = v[4],
                (3, Some(0)) => e[1] = v[1],
                (4, Some(0)) => e[2] = v[2],
                // first atom k ≠ 0, second ≠ 0: only the isolated vertex is caught
                (1..=4, Some(_)) => e[0] = v[0],
                (5, None) => e[0] = v[0],
                (6, None) => e[3] = v[3],
                (7, None) => e[4] = v[4],
                (8, None) => e[1] = v[1],
                (9, None) => e[2] = v[2],
                _ => unreachable!("row {row}"),
            }
            e
        })
        .collect();
    PayoffMatrix {
        row_labels: rows.iter().map(ToString::to_string).collect(),
        col_labels: (0..5).map(|k| k.to_string()).collect(),
        entries,
    }
}

/// True iff some entry is the minimum of its row and the maximum of its column.
pub fn pure_saddle_exists(m: &PayoffMatrix) -> bool {
    let col_max: Vec<f64> = (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| m.get(i, j)).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    m.entries.iter().any(|row| {
        let row_min = row.iter().copied().fold(f64::INFINITY, f64::min);
        row.iter().enumerate().any(|(j, &h)| h == row_min && h == col_max[j])
    })
}

/// `(max_j min_k h_jk, min_k max_j h_jk)`; a pure saddle exists iff they agree.
pub fn pure_security_levels(m: &PayoffMatrix) -> (f64, f64) {
    let lower = m
        .entries
        .iter()
        .map(|r| r.iter().copied().fold(f64::INFINITY, f64::min))
        .fold(f64::NEG_INFINITY, f64::max);
    let upper = (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| m.get(i, j)).fold(f64::NEG_INFINITY, f64::max))
        .fold(f64::INFINITY, f64::min);
    (lower, upper)
}

/// Born profiles `(p1, p2, p3, p4)` of a planar strategy at angle `alpha_deg`
/// for diagonal angle `theta_deg`.
pub fn half_profile(alpha_deg: f64, theta_deg: f64) -> [f64; 4] {
    let a = alpha_deg.to_radians();
    let d = (alpha_deg - theta_deg).to_radians();
    [a.cos().powi(2), d.cos().powi(2), a.sin().powi(2), d.sin().powi(2)]
}

/// Closed-form expected payoff of the spin-½ game:
/// `a p1 q3 + c p3 q1 + b p2 q4 + d p4 q2` with the trigonometric profiles.
pub fn expected_payoff_half(spec: &SpinHalfGameSpec, alpha_deg: f64, beta_deg: f64) -> f64 {
    let p = half_profile(alpha_deg, spec.theta_a);
    let q = half_profile(beta_deg, spec.theta_b);
    spec.a * p[0] * q[2] + spec.c * p[2] * q[0] + spec.b * p[1] * q[3] + spec.d * p[3] * q[1]
}

/// Bob's expected payoff, the negation of Alice's.
pub fn expected_payoff_half_bob(spec: &SpinHalfGameSpec, alpha_deg: f64, beta_deg: f64) -> f64 {
    -expected_payoff_half(spec, alpha_deg, beta_deg)
}

/// Payoff operator `Σ h_jk α̂_j ⊗ β̂_k` on ℝ² ⊗ ℝ².
pub fn payoff_operator_half(spec: &SpinHalfGameSpec) -> Result<DMatrix<f64>> {
    let alice = spin_half_projectors(spec.theta_a)?;
    let bob = spin_half_projectors(spec.theta_b)?;
    let h = spec.payoff_table();
    let mut op = DMatrix::zeros(4, 4);
    for (j, aj) in alice.iter().enumerate() {
        for (k, bk) in bob.iter().enumerate() {
            if h[j][k] != 0.0 {
                op += aj.matrix().kronecker(bk.matrix()) * h[j][k];
            }
        }
    }
    Ok(op)
}

/// `⟨φ⊗ψ, Ĥ_A (φ⊗ψ)⟩` computed from the tensor-product payoff operator.
pub fn expected_payoff_half_operator(spec: &SpinHalfGameSpec, alpha_deg: f64, beta_deg: f64) -> Result<f64> {
    let op = payoff_operator_half(spec)?;
    let phi = StrategyVector::planar(alpha_deg).as_dvector();
    let psi = StrategyVector::planar(beta_deg).as_dvector();
    let state: DVector<f64> = phi.kronecker(&psi);
    Ok(state.dot(&(&op * &state)))
}

/// Born weights `⟨A_i φ, φ⟩` for the ten spin-1 questions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpinOneProfile(pub [f64; 10]);

impl SpinOneProfile {
    /// Profile from the direct quadratic forms of the three line projectors
    /// A0, A1, A3 and A2, completed by the orthogonality identities
    /// `p4 = 1 − p0 − p2`, `p5 = 1 − p0`, `p6 = 1 − p3`, `p7 = 1 − p4`,
    /// `p8 = 1 − p1`, `p9 = 1 − p2`.
    pub fn from_strategy(theta_deg: f64, v: &StrategyVector) -> Result<Self> {
        let [x, y, z] = match v.components() {
            [x, y, z] => [*x, *y, *z],
            other => return Err(Error::DimensionMismatch { expected: 3, got: other.len() }),
        };
        let (s, c) = theta_deg.to_radians().sin_cos();
        let p0 = z * z;
        let p1 = x * x;
        let p2 = (c * x + s * y).powi(2);
        let p3 = y * y;
        let p4 = 1.0 - p0 - p2;
        let mut p = [p0, p1, p2, p3, p4, 1.0 - p0, 1.0 - p3, 1.0 - p4, 1.0 - p1, 1.0 - p2];
        p.iter_mut().for_each(|x| *x = clamp_probability(*x));
        Ok(Self(p))
    }

    /// Profile with every entry taken from the explicit 3×3 projector matrices.
    pub fn from_projectors(theta_deg: f64, v: &StrategyVector) -> Result<Self> {
        if v.dim() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: v.dim() });
        }
        let projs = spin_one_projectors(theta_deg)?;
        let mut p = [0.0; 10];
        for (slot, proj) in p.iter_mut().zip(projs.iter()) {
            *slot = clamp_probability(quadratic_form(proj.matrix(), v.components()));
        }
        Ok(Self(p))
    }
}

/// Expected spin-1 payoff from two Born profiles.
pub fn expected_payoff_one_profiles(spec: &SpinOneGameSpec, p: &SpinOneProfile, q: &SpinOneProfile) -> f64 {
    let (u, v) = (spec.u, spec.v);
    let (p, q) = (p.0, q.0);
    u[0] * p[5] * (q[1] + q[2] + q[3] + q[4])
        + u[1] * p[8] * (q[0] + q[3])
        + u[2] * p[9] * (q[0] + q[4])
        + u[3] * p[6] * (q[0] + q[1])
        + u[4] * p[7] * (q[0] + q[2])
        + v[0] * p[0] * q[0]
        + v[1] * p[1] * q[1]
        + v[2] * p[2] * q[2]
        + v[3] * p[3] * q[3]
        + v[4] * p[4] * q[4]
}

/// Alice's average profit in the spin-1 game for strategies `phi` (Alice,
/// angle θ_A) and `psi` (Bob, angle θ_B).
pub fn expected_payoff_one(spec: &SpinOneGameSpec, phi: &StrategyVector, psi: &StrategyVector) -> Result<f64> {
    let p = SpinOneProfile::from_strategy(spec.theta_a, phi)?;
    let q = SpinOneProfile::from_strategy(spec.theta_b, psi)?;
    Ok(expected_payoff_one_profiles(spec, &p, &q))
}

/// Coefficients `C[i][k]` with `E = Σ C_ik p_i q_k` over the ten questions of
/// each player.
pub fn spin_one_coefficients(spec: &SpinOneGameSpec) -> [[f64; 10]; 10] {
    let (u, v) = (spec.u, spec.v);
    let mut c = [[0.0; 10]; 10];
    for k in 1..5 {
        c[5][k] += u[0];
    }
    for (row, u_i, bob) in [(8, u[1], [0, 3]), (9, u[2], [0, 4]), (6, u[3], [0, 1]), (7, u[4], [0, 2])] {
        for k in bob {
            c[row][k] += u_i;
        }
    }
    for i in 0..5 {
        c[i][i] += v[i];
    }
    c
}
