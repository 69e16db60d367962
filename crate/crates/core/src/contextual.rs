//! Total probability across contexts: the classical Bayes sum versus the
//! Born probability, and the interference term separating them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::check_open_angle;

const TERM_FLOOR: f64 = 1e-9;

/// Decomposition of a direct Born probability through a two-element context.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InterferenceReport {
    /// `|⟨target, state⟩|²`.
    pub direct: f64,
    /// `Σ_j p(c_j) p(target | c_j)`.
    pub classical_sum: f64,
    pub interference_term: f64,
    /// `interference_term / (2 √(term1 · term2))`; `None` if either term is
    /// below `1e-9`.
    pub lambda: Option<f64>,
    /// `p(c_1), p(c_2)` for the state.
    pub context_probs: [f64; 2],
    /// `p(target | c_1), p(target | c_2)`.
    pub conditionals: [f64; 2],
}

/// Bayes' total probability `p(c1) p(a|c1) + (1 − p(c1)) p(a|c2)`.
pub fn bayes_total(p_c1: f64, p_a_c1: f64, p_a_c2: f64) -> Result<f64> {
    for (name, p) in [("p(c1)", p_c1), ("p(a|c1)", p_a_c1), ("p(a|c2)", p_a_c2)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidInput(format!("{name} = {p} is not a probability")));
        }
    }
    Ok(p_c1 * p_a_c1 + (1.0 - p_c1) * p_a_c2)
}

/// Decomposes `|⟨target, state⟩|²` through the orthonormal `basis`.
///
/// With amplitudes `c_j = ⟨b_j, state⟩` and `t_j = ⟨target, b_j⟩` the direct
/// amplitude is `c_1 t_1 + c_2 t_2`; squaring gives the two classical terms
/// plus the cross term `2 c_1 t_1 c_2 t_2`.
pub fn decompose_amplitude(state: [f64; 2], target: [f64; 2], basis: [[f64; 2]; 2]) -> Result<InterferenceReport> {
    for v in [state, target, basis[0], basis[1]] {
        let n = v[0] * v[0] + v[1] * v[1];
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnit(n));
        }
    }
    let ortho = dot(basis[0], basis[1]);
    if ortho.abs() > 1e-12 {
        return Err(Error::InvalidInput(format!("context basis is not orthogonal (overlap {ortho})")));
    }
    let c = [dot(basis[0], state), dot(basis[1], state)];
    let t = [dot(target, basis[0]), dot(target, basis[1])];
    let amp = [c[0] * t[0], c[1] * t[1]];
    let terms = [amp[0] * amp[0], amp[1] * amp[1]];
    let interference_term = 2.0 * amp[0] * amp[1];
    let lambda = (terms[0] >= TERM_FLOOR && terms[1] >= TERM_FLOOR)
        .then(|| interference_term / (2.0 * (terms[0] * terms[1]).sqrt()));
    Ok(InterferenceReport {
        direct: dot(target, state).powi(2),
        classical_sum: terms[0] + terms[1],
        interference_term,
        lambda,
        context_probs: [c[0] * c[0], c[1] * c[1]],
        conditionals: [t[0] * t[0], t[1] * t[1]],
    })
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn unit(deg: f64) -> [f64; 2] {
    let (s, c) = deg.to_radians().sin_cos();
    [c, s]
}

fn context(theta_deg: f64) -> [[f64; 2]; 2] {
    let [c, s] = unit(theta_deg);
    [[c, s], [-s, c]]
}

fn check_beta(beta_deg: f64) -> Result<()> {
    if !beta_deg.is_finite() {
        return Err(Error::InvalidInput(format!("angle {beta_deg} is not finite")));
    }
    Ok(())
}

/// Probability of question 1 ("yes", basis vector e1) for the strategy at
/// angle `beta_deg`, decomposed through the context at angle `theta_deg`.
pub fn interference_decomposition(beta_deg: f64, theta_deg: f64) -> Result<InterferenceReport> {
    check_beta(beta_deg)?;
    check_open_angle(theta_deg)?;
    decompose_amplitude(unit(beta_deg), [1.0, 0.0], context(theta_deg))
}

/// The mirror decomposition: probability of the context vector at `theta_deg`
/// decomposed through the coordinate basis `{e1, e2}`.
pub fn interference_decomposition_swapped(beta_deg: f64, theta_deg: f64) -> Result<InterferenceReport> {
    check_beta(beta_deg)?;
    check_open_angle(theta_deg)?;
    decompose_amplitude(unit(beta_deg), unit(theta_deg), [[1.0, 0.0], [0.0, 1.0]])
}

/// Position frequencies `(ω1, ω2, ω3, ω4)` of an ensemble in which Bob sits
/// twice as often at 1 as at 2 or 4, and never at 3.
pub fn unperturbed_frequencies() -> [f64; 4] {
    [0.5, 0.25, 0.0, 0.25]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn bayes_examples() {
        assert_eq!(bayes_total(0.5, 1.0, 0.0).unwrap(), 0.5);
        assert_abs_diff_eq!(bayes_total(0.75, 0.75, 0.25).unwrap(), 0.625, epsilon = 1e-15);
        assert_eq!(bayes_total(1.0, 0.3, 0.9).unwrap(), 0.3);
        assert!(bayes_total(1.1, 0.3, 0.9).is_err());
        assert!(bayes_total(0.5, -0.1, 0.9).is_err());
    }

    #[test]
    fn worked_point() {
        let r = interference_decomposition(60.0, 30.0).unwrap();
        assert_abs_diff_eq!(r.direct, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(r.classical_sum, 0.625, epsilon = 1e-12);
        assert_abs_diff_eq!(r.interference_term, -0.375, epsilon = 1e-12);
        assert_abs_diff_eq!(r.lambda.unwrap(), -1.0, epsilon = 1e-12);
    }

    #[test]
    fn context_eigenstates() {
        let r = interference_decomposition(30.0, 30.0).unwrap();
        assert_abs_diff_eq!(r.direct, 30f64.to_radians().cos().powi(2), epsilon = 1e-12);
        assert_abs_diff_eq!(r.classical_sum, r.direct, epsilon = 1e-12);
        assert_abs_diff_eq!(r.interference_term, 0.0, epsilon = 1e-12);
        assert_eq!(r.lambda, None);

        let r = interference_decomposition(0.0, 40.0).unwrap();
        assert_abs_diff_eq!(r.direct, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.classical_sum + r.interference_term, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.lambda.unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_theta_rejected() {
        assert!(interference_decomposition(10.0, 0.0).is_err());
        assert!(interference_decomposition(10.0, 90.0).is_err());
        assert!(interference_decomposition(f64::NAN, 30.0).is_err());
    }

    #[test]
    fn unperturbed() {
        let w = unperturbed_frequencies();
        assert_eq!(w[0], 0.5);
        assert_eq!(w[2], 0.0);
        assert_eq!(w.iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn full_grid_identity() {
        for b in 0..180 {
            for t in 1..90 {
                for r in [
                    interference_decomposition(b as f64, t as f64).unwrap(),
                    interference_decomposition_swapped(b as f64, t as f64).unwrap(),
                ] {
                    assert!((r.direct - r.classical_sum - r.interference_term).abs() <= 1e-12);
                    if let Some(l) = r.lambda {
                        assert!((l.abs() - 1.0).abs() <= 1e-9);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn classical_sum_is_bayes(beta in 0.0f64..180.0, theta in 0.5f64..89.5) {
            for r in [
                interference_decomposition(beta, theta).unwrap(),
                interference_decomposition_swapped(beta, theta).unwrap(),
            ] {
                let bayes = bayes_total(r.context_probs[0], r.conditionals[0], r.conditionals[1]).unwrap();
                prop_assert!((bayes - r.classical_sum).abs() <= 1e-12);
                prop_assert!((r.context_probs[0] + r.context_probs[1] - 1.0).abs() <= 1e-12);
            }
        }

        #[test]
        fn direct_is_cos_squared(beta in 0.0f64..180.0, theta in 0.5f64..89.5) {
            let r = interference_decomposition(beta, theta).unwrap();
            prop_assert!((r.direct - beta.to_radians().cos().powi(2)).abs() <= 1e-12);
            let expected = (beta - theta).to_radians().cos().powi(2) * theta.to_radians().cos().powi(2)
                + (beta - theta).to_radians().sin().powi(2) * theta.to_radians().sin().powi(2);
            prop_assert!((r.classical_sum - expected).abs() <= 1e-12);
            let s = interference_decomposition_swapped(beta, theta).unwrap();
            prop_assert!((s.direct - (beta - theta).to_radians().cos().powi(2)).abs() <= 1e-12);
        }
    }
}
