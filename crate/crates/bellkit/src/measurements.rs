//! Finite-outcome POVMs with bounded outcome values, their first-moment
//! (W) operators, and the spin observable family J(theta).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qlinalg::{hermitian_eigen, kron, sym_tensor, ComplexMatrix, DEFAULT_TOL};

/// Finite set of distinct real outcome values with bound C.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeSet {
    values: Vec<f64>,
    bound: f64,
}

impl OutcomeSet {
    pub fn new(values: Vec<f64>, bound: f64) -> Result<Self> {
        if bound <= 0.0 {
            return Err(Error::NonpositiveBound { bound });
        }
        if values.is_empty() {
            return Err(Error::InvalidOutcomes { reason: "empty outcome set".into() });
        }
        for (i, &v) in values.iter().enumerate() {
            if v.abs() > bound {
                return Err(Error::InvalidOutcomes {
                    reason: format!("|{v}| exceeds the bound {bound}"),
                });
            }
            if values[..i].iter().any(|&w| w == v) {
                return Err(Error::InvalidOutcomes { reason: format!("duplicate outcome {v}") });
            }
        }
        Ok(Self { values, bound })
    }

    pub fn plus_minus_one() -> Self {
        Self::new(vec![1.0, -1.0], 1.0).expect("valid outcome set")
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn index_of(&self, value: f64) -> Option<usize> {
        self.values.iter().position(|&v| v == value)
    }
}

/// A POVM over a finite outcome set: one positive effect per outcome, the
/// effects summing to identity. The label carries the setting parameter.
#[derive(Debug, Clone)]
pub struct DiscretePovm {
    label: String,
    outcomes: OutcomeSet,
    effects: Vec<ComplexMatrix>,
}

impl DiscretePovm {
    pub fn new(
        label: impl Into<String>,
        outcomes: OutcomeSet,
        effects: Vec<ComplexMatrix>,
    ) -> Result<Self> {
        if outcomes.values().len() != effects.len() {
            return Err(Error::CountMismatch {
                outcomes: outcomes.values().len(),
                effects: effects.len(),
            });
        }
        let dim = effects[0].dim();
        let mut sum = ComplexMatrix::zeros(dim);
        for (index, e) in effects.iter().enumerate() {
            if e.dim() != dim {
                return Err(Error::DimMismatch { left: dim, right: e.dim() });
            }
            let defect = e.hermiticity_defect();
            if defect > DEFAULT_TOL {
                return Err(Error::NotHermitian { defect });
            }
            let min_eigenvalue = e.min_eigenvalue(DEFAULT_TOL)?;
            if min_eigenvalue < -DEFAULT_TOL {
                return Err(Error::NotPsdEffect { index, min_eigenvalue });
            }
            sum = sum.add(e);
        }
        let defect = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if defect > DEFAULT_TOL {
            return Err(Error::Incomplete { defect });
        }
        Ok(Self { label: label.into(), outcomes, effects })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn outcomes(&self) -> &OutcomeSet {
        &self.outcomes
    }

    pub fn effects(&self) -> &[ComplexMatrix] {
        &self.effects
    }

    pub fn dim(&self) -> usize {
        self.effects[0].dim()
    }

    pub fn bound(&self) -> f64 {
        self.outcomes.bound()
    }

    /// M(B): sum of the effects whose outcome lies in the subset.
    pub fn subset_effect(&self, subset: &[f64]) -> Result<ComplexMatrix> {
        let mut acc = ComplexMatrix::zeros(self.dim());
        for &v in subset {
            let i = self
                .outcomes
                .index_of(v)
                .ok_or(Error::UnknownOutcome { value: v })?;
            acc = acc.add(&self.effects[i]);
        }
        Ok(acc)
    }

    /// First-moment operator W = sum of lambda_i * effect_i. Self-adjoint
    /// with operator norm at most the outcome bound.
    pub fn effect_operator(&self) -> ComplexMatrix {
        let mut w = ComplexMatrix::zeros(self.dim());
        for (e, &l) in self.effects.iter().zip(self.outcomes.values()) {
            w = w.add(&e.scale(l));
        }
        debug_assert!(w.is_hermitian(1e-9));
        debug_assert!({
            let (vals, _) = hermitian_eigen(&w, 1e-9).expect("W is Hermitian");
            vals.iter().all(|&l| l.abs() <= self.bound() + 1e-9)
        });
        w
    }

    /// The completely noisy two-outcome POVM {I/2, I/2} with outcomes +-1.
    pub fn noise_qubit(label: impl Into<String>) -> Self {
        let half = ComplexMatrix::identity(2).scale(0.5);
        Self::new(label, OutcomeSet::plus_minus_one(), vec![half.clone(), half])
            .expect("valid POVM")
    }
}

/// Projective +-1 POVM of the spin observable
/// J(theta) = (|u><u| - |d><d|) cos 2theta + (|u><d| + |d><u|) sin 2theta.
pub fn spin_observable(theta: f64) -> DiscretePovm {
    // Spectral projectors (I +- J)/2; J^2 = I so they are exact projectors.
    let j = spin_matrix(theta);
    let plus = ComplexMatrix::identity(2).add(&j).scale(0.5);
    let minus = ComplexMatrix::identity(2).sub(&j).scale(0.5);
    DiscretePovm::new(
        format!("spin({theta})"),
        OutcomeSet::plus_minus_one(),
        vec![plus, minus],
    )
    .expect("spin observable is a valid POVM")
}

/// The raw matrix of J(theta).
pub fn spin_matrix(theta: f64) -> ComplexMatrix {
    let c2 = (2.0 * theta).cos();
    let s2 = (2.0 * theta).sin();
    let mut j = ComplexMatrix::zeros(2);
    j.set(0, 0, Complex64::new(c2, 0.0));
    j.set(1, 1, Complex64::new(-c2, 0.0));
    j.set(0, 1, Complex64::new(s2, 0.0));
    j.set(1, 0, Complex64::new(s2, 0.0));
    j
}

/// Alice/Bob similarity: equality of the first-moment operators.
pub fn similarity_holds(alice: &DiscretePovm, bob: &DiscretePovm, tol: f64) -> Result<bool> {
    if alice.dim() != bob.dim() {
        return Err(Error::DimMismatch { left: alice.dim(), right: bob.dim() });
    }
    Ok(alice.effect_operator().max_abs_diff(&bob.effect_operator()) <= tol)
}

/// W1 (x) W2, or its symmetrized form for identical sub-systems.
pub fn joint_expectation_operator(
    p1: &DiscretePovm,
    p2: &DiscretePovm,
    symmetrized: bool,
) -> Result<ComplexMatrix> {
    let w1 = p1.effect_operator();
    let w2 = p2.effect_operator();
    if symmetrized {
        sym_tensor(&w1, &w2)
    } else {
        Ok(kron(&w1, &w2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::rho_zero;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn trine_povm() -> DiscretePovm {
        // Three rank-one effects (2/3)|psi_k><psi_k| at 120 degrees.
        let effects = (0..3)
            .map(|k| {
                let phi = 2.0 * PI * k as f64 / 3.0;
                ComplexMatrix::projector(&[c(phi.cos(), 0.0), c(phi.sin(), 0.0)])
                    .scale(2.0 / 3.0)
            })
            .collect();
        DiscretePovm::new(
            "trine",
            OutcomeSet::new(vec![0.0, 1.0, 2.0], 2.0).unwrap(),
            effects,
        )
        .unwrap()
    }

    #[test]
    fn make_povm_projective() {
        let up = ComplexMatrix::projector(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let down = ComplexMatrix::projector(&[c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(DiscretePovm::new("z", OutcomeSet::plus_minus_one(), vec![up, down]).is_ok());
    }

    #[test]
    fn make_povm_incomplete() {
        let i2 = ComplexMatrix::identity(2);
        let res = DiscretePovm::new("bad", OutcomeSet::plus_minus_one(), vec![i2.clone(), i2]);
        assert!(matches!(res, Err(Error::Incomplete { .. })));
    }

    #[test]
    fn trine_is_valid() {
        let t = trine_povm();
        assert_eq!(t.effects().len(), 3);
    }

    #[test]
    fn trine_with_unit_outcomes_gives_identity() {
        let t = trine_povm();
        let all_ones = DiscretePovm::new(
            "trine1",
            OutcomeSet::new(vec![1.0, 1.0 + 1e-12, 1.0 - 1e-12], 2.0).unwrap(),
            t.effects().to_vec(),
        )
        .unwrap();
        assert!(all_ones.effect_operator().is_identity(1e-10));
    }

    #[test]
    fn effect_operator_recovers_spin() {
        for theta in [0.0, 0.3, 0.7, PI / 4.0, PI / 6.0] {
            let p = spin_observable(theta);
            assert!(p.effect_operator().approx_eq(&spin_matrix(theta), 1e-10));
        }
    }

    #[test]
    fn noise_povm_gives_zero_operator() {
        assert!(DiscretePovm::noise_qubit("noise").effect_operator().max_abs() < 1e-15);
    }

    #[test]
    fn spin_observable_special_angles() {
        let w0 = spin_observable(0.0).effect_operator();
        assert!(w0.approx_eq(&ComplexMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]), 1e-12));

        let w45 = spin_observable(PI / 4.0).effect_operator();
        assert!(w45.approx_eq(&ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]), 1e-12));

        let h = 3.0f64.sqrt() / 2.0;
        let w30 = spin_observable(PI / 6.0).effect_operator();
        assert!(w30.approx_eq(&ComplexMatrix::from_real_rows(&[&[0.5, h], &[h, -0.5]]), 1e-12));
    }

    #[test]
    fn spin_eigenvalues_plus_minus_one() {
        let (vals, _) = hermitian_eigen(&spin_matrix(0.7), 1e-10).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spin_effects_are_orthogonal_projectors() {
        let p = spin_observable(0.9);
        let [plus, minus] = [&p.effects()[0], &p.effects()[1]];
        assert!(plus.matmul(plus).approx_eq(plus, 1e-12));
        assert!(minus.matmul(minus).approx_eq(minus, 1e-12));
        assert!(plus.matmul(minus).max_abs() < 1e-12);
        assert!(plus.add(minus).is_identity(1e-12));
    }

    #[test]
    fn similarity_compares_first_moments() {
        let a = spin_observable(0.4);
        assert!(similarity_holds(&a, &spin_observable(0.4), 1e-10).unwrap());
        assert!(!similarity_holds(&a, &spin_observable(PI / 4.0), 1e-10).unwrap());

        // A noisy two-outcome POVM with the same W as a projective one:
        // effects (I +- W/2)/2 with outcomes +-2 give W as first moment.
        let w = spin_matrix(0.4);
        let noisy = DiscretePovm::new(
            "noisy",
            OutcomeSet::new(vec![2.0, -2.0], 2.0).unwrap(),
            vec![
                ComplexMatrix::identity(2).add(&w.scale(0.5)).scale(0.5),
                ComplexMatrix::identity(2).sub(&w.scale(0.5)).scale(0.5),
            ],
        )
        .unwrap();
        assert!(similarity_holds(&a, &noisy, 1e-10).unwrap());
    }

    #[test]
    fn joint_operator_plain_and_symmetrized() {
        let p = spin_observable(0.0);
        let plain = joint_expectation_operator(&p, &p, false).unwrap();
        assert!(plain.approx_eq(
            &ComplexMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)]),
            1e-12
        ));
        let symmetric = joint_expectation_operator(&p, &p, true).unwrap();
        assert!(symmetric.approx_eq(&plain, 1e-14));

        let q = spin_observable(0.8);
        let pq = joint_expectation_operator(&p, &q, true).unwrap();
        let qp = joint_expectation_operator(&q, &p, true).unwrap();
        assert_eq!(pq, qp);
    }

    #[test]
    fn symmetrized_trace_matches_closed_form() {
        // tr[rho0 {J(b) (x) J(c)}_sym] = -cos 2b cos 2c.
        let rho = rho_zero();
        for (b_angle, c_angle) in [(0.3, 1.1), (0.0, PI / 6.0), (1.4, 0.2)] {
            let op = joint_expectation_operator(
                &spin_observable(b_angle),
                &spin_observable(c_angle),
                true,
            )
            .unwrap();
            let t = rho.matrix().matmul(&op).trace();
            let want = -(2.0 * b_angle).cos() * (2.0 * c_angle).cos();
            assert!((t.re - want).abs() < 1e-12);
            assert!(t.im.abs() < 1e-12);
        }
    }
}
