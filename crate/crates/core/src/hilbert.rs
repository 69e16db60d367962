//! Real projector representations of the question lattices and the Born rule.
//!
//! Everything here is real and at most three-dimensional. Subspace meet and
//! join go through orthonormal bases obtained from an SVD, with rank decided
//! by a singular-value cut relative to the largest singular value.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{ElementId, FiniteLattice};

/// Relative singular-value cut used to decide subspace dimension.
pub const RANK_TOL: f64 = 1e-10;
/// Tolerance used when comparing projector matrices.
pub const MATRIX_TOL: f64 = 1e-10;
const UNIT_TOL: f64 = 1e-12;

pub(crate) fn check_open_angle(theta_deg: f64) -> Result<()> {
    if theta_deg.is_finite() && theta_deg > 0.0 && theta_deg < 90.0 {
        Ok(())
    } else {
        Err(Error::DegenerateAngle(theta_deg))
    }
}

/// Orthogonal projector onto a subspace of ℝ² or ℝ³.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "ProjectorRecord", try_from = "ProjectorRecord")]
pub struct Projector {
    matrix: DMatrix<f64>,
    label: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ProjectorRecord {
    label: String,
    rows: Vec<Vec<f64>>,
}

impl From<Projector> for ProjectorRecord {
    fn from(p: Projector) -> Self {
        let n = p.dim();
        let rows = (0..n).map(|i| (0..n).map(|j| p.matrix[(i, j)]).collect()).collect();
        ProjectorRecord { label: p.label, rows }
    }
}

impl TryFrom<ProjectorRecord> for Projector {
    type Error = Error;

    fn try_from(r: ProjectorRecord) -> Result<Self> {
        let n = r.rows.len();
        if r.rows.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("projector rows must form a square matrix".into()));
        }
        let m = DMatrix::from_fn(n, n, |i, j| r.rows[i][j]);
        Projector::new(m, r.label)
    }
}

impl Projector {
    /// Wraps a matrix after checking symmetry and idempotence.
    pub fn new(matrix: DMatrix<f64>, label: impl Into<String>) -> Result<Self> {
        let p = Self::from_matrix_unchecked(matrix, label);
        if !(p.dim() == 2 || p.dim() == 3) || !p.matrix.is_square() {
            return Err(Error::InvalidInput(format!("projector must be 2×2 or 3×3, got {}×{}", p.matrix.nrows(), p.matrix.ncols())));
        }
        if p.symmetry_defect() > 1e-12 || p.idempotence_defect() > 1e-12 {
            return Err(Error::InvalidInput(format!("matrix {} is not an orthogonal projector", p.label)));
        }
        Ok(p)
    }

    pub(crate) fn from_matrix_unchecked(matrix: DMatrix<f64>, label: impl Into<String>) -> Self {
        Self { matrix, label: label.into() }
    }

    /// Rank-one projector onto the line through `v` (normalized internally).
    pub fn onto_line(v: &[f64], label: impl Into<String>) -> Self {
        let v = DVector::from_column_slice(v).normalize();
        Self::from_matrix_unchecked(&v * v.transpose(), label)
    }

    pub fn zero(dim: usize, label: impl Into<String>) -> Self {
        Self::from_matrix_unchecked(DMatrix::zeros(dim, dim), label)
    }

    pub fn identity(dim: usize, label: impl Into<String>) -> Self {
        Self::from_matrix_unchecked(DMatrix::identity(dim, dim), label)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// Dimension of the range, read off the trace.
    pub fn rank(&self) -> usize {
        self.trace().round() as usize
    }

    pub fn symmetry_defect(&self) -> f64 {
        max_abs(&(&self.matrix - self.matrix.transpose()))
    }

    pub fn idempotence_defect(&self) -> f64 {
        max_abs(&(&self.matrix * &self.matrix - &self.matrix))
    }

    /// Projector onto the orthogonal complement of the range.
    pub fn complement(&self) -> Projector {
        let n = self.dim();
        Projector::from_matrix_unchecked(DMatrix::identity(n, n) - &self.matrix, format!("{}'", self.label))
    }

    /// Largest absolute entry of `self − other`.
    pub fn distance(&self, other: &Projector) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        max_abs(&(&self.matrix - &other.matrix))
    }

    /// Orthonormal basis of the range, one column per basis vector.
    pub fn range_basis(&self) -> DMatrix<f64> {
        column_space(&self.matrix)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

pub(crate) fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

// Orthonormal basis of the column space of `m`.
fn column_space(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let smax = svd.singular_values.iter().fold(0.0_f64, |a, &s| a.max(s));
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| smax > 0.0 && svd.singular_values[i] > RANK_TOL * smax)
        .collect();
    DMatrix::from_fn(n, keep.len(), |i, j| u[(i, keep[j])])
}

// Orthonormal basis of the null space of `m` (columns of length m.ncols()).
fn null_space(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.ncols();
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().fold(0.0_f64, |a, &s| a.max(s));
    let mut cols: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= RANK_TOL * smax)
        .collect();
    // rows of V^T beyond the computed singular values are null directions too
    cols.extend(svd.singular_values.len()..vt.nrows());
    DMatrix::from_fn(n, cols.len(), |i, j| vt[(cols[j], i)])
}

fn projector_from_basis(basis: &DMatrix<f64>, dim: usize) -> DMatrix<f64> {
    if basis.ncols() == 0 {
        DMatrix::zeros(dim, dim)
    } else {
        basis * basis.transpose()
    }
}

/// Projector onto `range(P) ∩ range(Q)`.
pub fn subspace_meet(p: &Projector, q: &Projector) -> Result<Projector> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: q.dim() });
    }
    let n = p.dim();
    // x ∈ range(P) ∩ range(Q)  ⇔  (I − P)x = 0 and (I − Q)x = 0
    let id = DMatrix::<f64>::identity(n, n);
    let mut stacked = DMatrix::zeros(2 * n, n);
    stacked.rows_mut(0, n).copy_from(&(&id - &p.matrix));
    stacked.rows_mut(n, n).copy_from(&(&id - &q.matrix));
    let basis = null_space(&stacked);
    Ok(Projector::from_matrix_unchecked(
        projector_from_basis(&basis, n),
        format!("({}∧{})", p.label, q.label),
    ))
}

/// Projector onto `span(range(P) ∪ range(Q))`.
pub fn subspace_join(p: &Projector, q: &Projector) -> Result<Projector> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: q.dim() });
    }
    let n = p.dim();
    let mut wide = DMatrix::zeros(n, 2 * n);
    wide.columns_mut(0, n).copy_from(&p.matrix);
    wide.columns_mut(n, n).copy_from(&q.matrix);
    let basis = column_space(&wide);
    Ok(Projector::from_matrix_unchecked(
        projector_from_basis(&basis, n),
        format!("({}∨{})", p.label, q.label),
    ))
}

/// Spin-½ question projectors `[α̂1, α̂2, α̂3, α̂4]` at diagonal angle `theta_deg`.
pub fn spin_half_projectors(theta_deg: f64) -> Result<[Projector; 4]> {
    check_open_angle(theta_deg)?;
    let t = theta_deg.to_radians();
    let (s, c) = t.sin_cos();
    let a1 = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
    let a2 = DMatrix::from_row_slice(2, 2, &[c * c, s * c, s * c, s * s]);
    let id = DMatrix::<f64>::identity(2, 2);
    let a3 = &id - &a1;
    let a4 = &id - &a2;
    Ok([
        Projector::from_matrix_unchecked(a1, "1"),
        Projector::from_matrix_unchecked(a2, "2"),
        Projector::from_matrix_unchecked(a3, "3"),
        Projector::from_matrix_unchecked(a4, "4"),
    ])
}

/// Spin-1 projectors `A0..A9` at angle `theta_deg`, entry for entry as in the
/// spin-1 matrix table: lines A0..A4, planes A5..A9.
pub fn spin_one_projectors(theta_deg: f64) -> Result<[Projector; 10]> {
    check_open_angle(theta_deg)?;
    let t = theta_deg.to_radians();
    let (s, c) = t.sin_cos();
    let m = |e: [f64; 9], label: &str| Projector::from_matrix_unchecked(DMatrix::from_row_slice(3, 3, &e), label);
    Ok([
        m([0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0], "A0"),
        m([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], "A1"),
        m([c * c, s * c, 0.0, s * c, s * s, 0.0, 0.0, 0.0, 0.0], "A2"),
        m([0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0], "A3"),
        m([s * s, -s * c, 0.0, -s * c, c * c, 0.0, 0.0, 0.0, 0.0], "A4"),
        m([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0], "A5"),
        m([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0], "A6"),
        m([c * c, s * c, 0.0, s * c, s * s, 0.0, 0.0, 0.0, 1.0], "A7"),
        m([0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0], "A8"),
        m([s * s, -s * c, 0.0, -s * c, c * c, 0.0, 0.0, 0.0, 1.0], "A9"),
    ])
}

/// One projector per element of [`crate::lattice::build_spin_half_lattice`],
/// in element order: zero, α̂1..α̂4, identity.
pub fn spin_half_representation(theta_deg: f64) -> Result<Vec<Projector>> {
    let [a1, a2, a3, a4] = spin_half_projectors(theta_deg)?;
    Ok(vec![Projector::zero(2, "0"), a1, a2, a3, a4, Projector::identity(2, "I")])
}

/// One projector per element of [`crate::lattice::build_spin_one_lattice`].
pub fn spin_one_representation(theta_deg: f64) -> Result<Vec<Projector>> {
    let mut out = vec![Projector::zero(3, "0")];
    out.extend(spin_one_projectors(theta_deg)?);
    out.push(Projector::identity(3, "I"));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeOp {
    Meet,
    Join,
    Complement,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepresentationMismatch {
    pub op: LatticeOp,
    pub x: String,
    /// Second operand; equal to `x` for complements.
    pub y: String,
    /// Element the abstract lattice predicts.
    pub expected: String,
    pub deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepresentationReport {
    pub pairs_checked: usize,
    pub max_deviation: f64,
    pub mismatches: Vec<RepresentationMismatch>,
}

impl RepresentationReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares subspace meet, join and complement of the given projectors with
/// the abstract lattice tables over every ordered pair of elements.
///
/// `projs[i]` must represent lattice element `i`.
pub fn check_representation(lattice: &FiniteLattice, projs: &[Projector]) -> Result<RepresentationReport> {
    if projs.len() != lattice.len() {
        return Err(Error::InvalidInput(format!(
            "need one projector per lattice element ({}), got {}",
            lattice.len(),
            projs.len()
        )));
    }
    let dim = projs[0].dim();
    if let Some(p) = projs.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
    }
    let mut mismatches = Vec::new();
    let mut max_deviation = 0.0_f64;
    let mut record = |op, x: ElementId, y: ElementId, expected: ElementId, got: &Projector| {
        let dev = got.distance(&projs[expected]);
        max_deviation = max_deviation.max(dev);
        if dev > MATRIX_TOL {
            mismatches.push(RepresentationMismatch {
                op,
                x: lattice.name(x).to_string(),
                y: lattice.name(y).to_string(),
                expected: lattice.name(expected).to_string(),
                deviation: dev,
            });
        }
    };
    for x in lattice.elements() {
        for y in lattice.elements() {
            let m = subspace_meet(&projs[x], &projs[y])?;
            record(LatticeOp::Meet, x, y, lattice.meet(x, y)?, &m);
            let j = subspace_join(&projs[x], &projs[y])?;
            record(LatticeOp::Join, x, y, lattice.join(x, y)?, &j);
        }
    }
    if lattice.has_ortho() {
        for x in lattice.elements() {
            record(LatticeOp::Complement, x, x, lattice.ortho(x)?, &projs[x].complement());
        }
    }
    Ok(RepresentationReport { pairs_checked: lattice.len() * lattice.len(), max_deviation, mismatches })
}

/// A player's pure quantum strategy: a real unit vector in ℝ² or ℝ³.
///
/// Three-dimensional vectors are kept with a non-negative last component;
/// `v` and `−v` give identical Born probabilities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyVector {
    components: Vec<f64>,
}

impl StrategyVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if !(components.len() == 2 || components.len() == 3) {
            return Err(Error::InvalidInput(format!("strategy must have 2 or 3 components, got {}", components.len())));
        }
        let norm2: f64 = components.iter().map(|c| c * c).sum();
        if !norm2.is_finite() || (norm2 - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit(norm2));
        }
        Ok(Self::canonical(components))
    }

    fn canonical(mut components: Vec<f64>) -> Self {
        if components.len() == 3 && components[2] < 0.0 {
            components.iter_mut().for_each(|c| *c = -*c);
        }
        Self { components }
    }

    /// `(cos α, sin α)`.
    pub fn planar(alpha_deg: f64) -> Self {
        let (s, c) = alpha_deg.to_radians().sin_cos();
        Self { components: vec![c, s] }
    }

    /// `(sin ϑ cos φ, sin ϑ sin φ, cos ϑ)` for polar angle ϑ and azimuth φ.
    pub fn spherical(polar_deg: f64, azimuth_deg: f64) -> Self {
        let (st, ct) = polar_deg.to_radians().sin_cos();
        let (sp, cp) = azimuth_deg.to_radians().sin_cos();
        Self::canonical(vec![st * cp, st * sp, ct])
    }

    /// `(cos α1, cos α2, cos α3)` with `cos α3 = √(1 − cos²α1 − cos²α2) ≥ 0`.
    pub fn from_direction_angles(alpha1_deg: f64, alpha2_deg: f64) -> Result<Self> {
        let c1 = alpha1_deg.to_radians().cos();
        let c2 = alpha2_deg.to_radians().cos();
        let rest = 1.0 - c1 * c1 - c2 * c2;
        if rest < -UNIT_TOL {
            return Err(Error::InvalidInput(format!(
                "cos²({alpha1_deg}°) + cos²({alpha2_deg}°) exceeds 1"
            )));
        }
        Ok(Self { components: vec![c1, c2, rest.max(0.0).sqrt()] })
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// Direction angles in degrees: `α` for planar vectors, `(α1, α2, α3)` in ℝ³.
    pub fn angles(&self) -> Vec<f64> {
        match self.components.as_slice() {
            [c, s] => vec![s.atan2(*c).to_degrees().rem_euclid(180.0)],
            comps => comps.iter().map(|c| c.clamp(-1.0, 1.0).acos().to_degrees()).collect(),
        }
    }

    pub fn as_dvector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.components)
    }
}

/// Born probability `vᵀ P v`, with roundoff just outside `[0, 1]` clamped.
pub fn born_probability(p: &Projector, v: &StrategyVector) -> Result<f64> {
    if p.dim() != v.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: v.dim() });
    }
    let norm2: f64 = v.components.iter().map(|c| c * c).sum();
    if (norm2 - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit(norm2));
    }
    Ok(clamp_probability(quadratic_form(p.matrix(), v.components())))
}

pub(crate) fn quadratic_form(m: &DMatrix<f64>, v: &[f64]) -> f64 {
    let n = v.len();
    let mut acc = 0.0;
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            row += m[(i, j)] * v[j];
        }
        acc += v[i] * row;
    }
    acc
}

pub(crate) fn clamp_probability(p: f64) -> f64 {
    if (-1e-12..0.0).contains(&p) {
        0.0
    } else if p > 1.0 && p <= 1.0 + 1e-12 {
        1.0
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_spin_half_lattice, build_spin_one_lattice};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn close(a: &DMatrix<f64>, b: &DMatrix<f64>) -> bool {
        max_abs(&(a - b)) <= 1e-12
    }

    #[test]
    fn spin_half_at_45_degrees() {
        let [a1, a2, a3, _] = spin_half_projectors(45.0).unwrap();
        let half = DMatrix::from_element(2, 2, 0.5);
        assert!(close(a2.matrix(), &half));
        assert!(close(&(a1.matrix() + a3.matrix()), &DMatrix::identity(2, 2)));
        assert!(close(&(a1.matrix() * a3.matrix()), &DMatrix::zeros(2, 2)));
    }

    #[test]
    fn degenerate_angles_are_rejected() {
        for t in [0.0, 90.0, -5.0, 120.0, f64::NAN] {
            assert!(spin_half_projectors(t).is_err());
            assert!(spin_one_projectors(t).is_err());
        }
    }

    #[test]
    fn spin_one_table_identities() {
        let a = spin_one_projectors(45.0).unwrap();
        assert!(close(&(a[0].matrix() + a[5].matrix()), &DMatrix::identity(3, 3)));
        assert!(close(&(a[1].matrix() + a[3].matrix()), a[5].matrix()));
        assert!(close(&(a[6].matrix() * a[3].matrix()), &DMatrix::zeros(3, 3)));
        let block = a[2].matrix().view((0, 0), (2, 2)).into_owned();
        assert!(close(&block, &DMatrix::from_element(2, 2, 0.5)));
        for p in &a[6..] {
            assert_eq!(p.rank(), 2);
        }
    }

    #[test]
    fn subspace_meet_and_join_examples() {
        let a = spin_one_projectors(70.0).unwrap();
        let m = subspace_meet(&a[7], &a[5]).unwrap();
        assert!(m.distance(&a[2]) < 1e-10);
        let j = subspace_join(&a[0], &a[1]).unwrap();
        assert!(j.distance(&a[6]) < 1e-10);
        for p in &a {
            assert!(subspace_meet(p, p).unwrap().distance(p) < 1e-10);
            assert!(subspace_join(p, p).unwrap().distance(p) < 1e-10);
        }
        let half = spin_half_projectors(30.0).unwrap();
        assert!(matches!(
            subspace_meet(&half[0], &a[0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn representation_is_clean_on_both_lattices() {
        let rep = check_representation(&build_spin_half_lattice(), &spin_half_representation(30.0).unwrap()).unwrap();
        assert!(rep.is_clean(), "{:?}", rep.mismatches);
        assert_eq!(rep.pairs_checked, 36);
        let rep = check_representation(&build_spin_one_lattice(), &spin_one_representation(70.0).unwrap()).unwrap();
        assert!(rep.is_clean(), "{:?}", rep.mismatches);
        assert_eq!(rep.pairs_checked, 144);
    }

    #[test]
    fn swapped_planes_are_detected() {
        let l = build_spin_one_lattice();
        let mut projs = spin_one_representation(70.0).unwrap();
        let (i6, i8) = (l.element("A6").unwrap(), l.element("A8").unwrap());
        projs.swap(i6, i8);
        let rep = check_representation(&l, &projs).unwrap();
        assert!(!rep.is_clean());
        assert!(rep
            .mismatches
            .iter()
            .any(|m| m.op == LatticeOp::Meet && m.x == "A6" && m.y == "A1"));
    }

    #[test]
    fn born_examples() {
        let [a1, ..] = spin_half_projectors(30.0).unwrap();
        assert_abs_diff_eq!(born_probability(&a1, &StrategyVector::planar(0.0)).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(born_probability(&a1, &StrategyVector::planar(145.5)).unwrap(), 0.679, epsilon = 1e-3);
        let a = spin_one_projectors(30.0).unwrap();
        let up = StrategyVector::new(vec![0.0, 0.0, 1.0]).unwrap();
        assert_eq!(born_probability(&a[0], &up).unwrap(), 1.0);
        assert!(matches!(
            StrategyVector::new(vec![1.0, 1.0]),
            Err(Error::NotUnit(_))
        ));
        assert!(born_probability(&a[0], &StrategyVector::planar(10.0)).is_err());
    }

    #[test]
    fn direction_angles_round_trip() {
        let v = StrategyVector::from_direction_angles(60.0, 60.0).unwrap();
        let ang = v.angles();
        assert_abs_diff_eq!(ang[0], 60.0, epsilon = 1e-9);
        assert_abs_diff_eq!(ang[1], 60.0, epsilon = 1e-9);
        assert_abs_diff_eq!(ang[2], 45.0, epsilon = 1e-9);
        assert!(StrategyVector::from_direction_angles(10.0, 10.0).is_err());
        let flipped = StrategyVector::new(vec![0.0, 0.6, -0.8]).unwrap();
        assert_eq!(flipped.components(), &[-0.0, -0.6, 0.8]);
    }

    #[test]
    fn projector_json_round_trip() {
        let a = spin_one_projectors(20.0).unwrap();
        let json = serde_json::to_string(&a[7]).unwrap();
        let back: Projector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a[7]);
        let bad = r#"{"label":"x","rows":[[1.0,1.0],[0.0,0.0]]}"#;
        assert!(serde_json::from_str::<Projector>(bad).is_err());
    }

    proptest! {
        #[test]
        fn projector_invariants_over_theta(theta in 0.01f64..89.99) {
            for p in spin_half_projectors(theta).unwrap().iter().chain(spin_one_projectors(theta).unwrap().iter()) {
                prop_assert!(p.symmetry_defect() <= 1e-12);
                prop_assert!(p.idempotence_defect() <= 1e-12);
                prop_assert!((p.trace() - p.trace().round()).abs() <= 1e-12);
            }
        }

        #[test]
        fn born_normalization(theta in 0.5f64..89.5, polar in 0.0f64..90.0, az in 0.0f64..360.0, alpha in 0.0f64..180.0) {
            let h = spin_half_projectors(theta).unwrap();
            let v = StrategyVector::planar(alpha);
            let p: Vec<f64> = h.iter().map(|p| born_probability(p, &v).unwrap()).collect();
            prop_assert!((p[0] + p[2] - 1.0).abs() <= 1e-12);
            prop_assert!((p[1] + p[3] - 1.0).abs() <= 1e-12);
            let a = spin_one_projectors(theta).unwrap();
            let w = StrategyVector::spherical(polar, az);
            let p: Vec<f64> = a.iter().map(|p| born_probability(p, &w).unwrap()).collect();
            prop_assert!((p[0] + p[1] + p[3] - 1.0).abs() <= 1e-12);
            prop_assert!((p[0] + p[2] + p[4] - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn born_equals_squared_projection_length(theta in 0.5f64..89.5, polar in 0.0f64..90.0, az in 0.0f64..360.0) {
            let w = StrategyVector::spherical(polar, az);
            for p in spin_one_projectors(theta).unwrap() {
                let basis = p.range_basis();
                let coords = basis.transpose() * w.as_dvector();
                let born = born_probability(&p, &w).unwrap();
                prop_assert!((coords.norm_squared() - born).abs() <= 1e-12);
            }
        }
    }
}
