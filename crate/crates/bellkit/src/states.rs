//! Density operators, separable representations, and the auxiliary
//! two-copy states built from a representation's left/right factors.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qlinalg::{kron, swap_operator, sym_tensor, ComplexMatrix, DEFAULT_TOL};

/// Validated trace-one PSD matrix with an optional tensor factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    factor_dims: Option<(usize, usize)>,
    label: String,
}

impl DensityOperator {
    /// Validation gateway: Hermitian, unit trace, PSD, all at 1e-10.
    pub fn new(matrix: ComplexMatrix, factor_dims: Option<(usize, usize)>) -> Result<Self> {
        let defect = matrix.hermiticity_defect();
        if defect > DEFAULT_TOL {
            return Err(Error::NotHermitian { defect });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > DEFAULT_TOL || trace.im.abs() > DEFAULT_TOL {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        let min_eigenvalue = matrix.min_eigenvalue(DEFAULT_TOL)?;
        if min_eigenvalue < -DEFAULT_TOL {
            return Err(Error::NotPsd { min_eigenvalue });
        }
        if let Some((d1, d2)) = factor_dims {
            if d1 * d2 != matrix.dim() {
                return Err(Error::DimMismatch { left: d1 * d2, right: matrix.dim() });
            }
        }
        Ok(Self { matrix, factor_dims, label: "rho".to_string() })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn factor_dims(&self) -> Option<(usize, usize)> {
        self.factor_dims
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Pure state |v><v| (v need not be normalized).
    pub fn pure(v: &[Complex64]) -> Result<Self> {
        Self::new(ComplexMatrix::projector(v), None)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::new(ComplexMatrix::identity(dim).scale(1.0 / dim as f64), None)
            .expect("I/d is a valid state")
    }
}

/// The reference two-qubit counterexample state
/// (|up><up| (x) |down><down| + |down><down| (x) |up><up|) / 2.
pub fn rho_zero() -> DensityOperator {
    let up = ComplexMatrix::projector(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
    let down = ComplexMatrix::projector(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
    let m = kron(&up, &down).add(&kron(&down, &up)).scale(0.5);
    DensityOperator::new(m, Some((2, 2)))
        .expect("rho_zero is a valid state")
        .with_label("rho0")
}

/// One weighted product term of a separable representation.
#[derive(Debug, Clone)]
pub struct RepTerm {
    pub weight: f64,
    pub left: DensityOperator,
    pub right: DensityOperator,
}

/// Weighted list of product-state terms. With `symmetrized` set, assembly
/// uses the symmetrized tensor product and left/right dims must agree.
#[derive(Debug, Clone)]
pub struct SeparableRepresentation {
    terms: Vec<RepTerm>,
    symmetrized: bool,
}

impl SeparableRepresentation {
    pub fn new(terms: Vec<RepTerm>, symmetrized: bool) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidRepresentation { reason: "no terms".into() });
        }
        let weight_sum: f64 = terms.iter().map(|t| t.weight).sum();
        if (weight_sum - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::InvalidRepresentation {
                reason: format!("weights sum to {weight_sum}, expected 1"),
            });
        }
        if let Some(t) = terms.iter().find(|t| t.weight <= 0.0) {
            return Err(Error::InvalidRepresentation {
                reason: format!("nonpositive weight {}", t.weight),
            });
        }
        let d_left = terms[0].left.dim();
        let d_right = terms[0].right.dim();
        for t in &terms {
            if t.left.dim() != d_left || t.right.dim() != d_right {
                return Err(Error::InvalidRepresentation {
                    reason: "terms have mixed factor dimensions".into(),
                });
            }
        }
        if symmetrized && d_left != d_right {
            return Err(Error::InvalidRepresentation {
                reason: format!(
                    "symmetrized representation needs equal factor dims, got {d_left} and {d_right}"
                ),
            });
        }
        Ok(Self { terms, symmetrized })
    }

    pub fn terms(&self) -> &[RepTerm] {
        &self.terms
    }

    pub fn symmetrized(&self) -> bool {
        self.symmetrized
    }

    pub fn left_dim(&self) -> usize {
        self.terms[0].left.dim()
    }

    pub fn right_dim(&self) -> usize {
        self.terms[0].right.dim()
    }

    /// The two-term representation of `rho_zero`, symmetrized form:
    /// a single term (1, |up><up|, |down><down|) under {.}_sym.
    pub fn rho_zero_symmetric() -> Self {
        let up = DensityOperator::pure(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
            .expect("valid pure state");
        let down = DensityOperator::pure(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
            .expect("valid pure state");
        Self::new(vec![RepTerm { weight: 1.0, left: up, right: down }], true)
            .expect("valid representation")
    }

    /// The plain two-term representation of `rho_zero`.
    pub fn rho_zero_plain() -> Self {
        let up = DensityOperator::pure(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
            .expect("valid pure state");
        let down = DensityOperator::pure(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
            .expect("valid pure state");
        Self::new(
            vec![
                RepTerm { weight: 0.5, left: up.clone(), right: down.clone() },
                RepTerm { weight: 0.5, left: down, right: up },
            ],
            false,
        )
        .expect("valid representation")
    }
}

/// Assemble the represented state: sum of xi_m * left_m (x) right_m,
/// symmetrized when the representation says so.
pub fn assemble(rep: &SeparableRepresentation) -> Result<DensityOperator> {
    let d = rep.left_dim() * rep.right_dim();
    let mut acc = ComplexMatrix::zeros(d);
    for t in rep.terms() {
        let prod = if rep.symmetrized() {
            sym_tensor(t.left.matrix(), t.right.matrix())?
        } else {
            kron(t.left.matrix(), t.right.matrix())
        };
        acc = acc.add(&prod.scale(t.weight));
    }
    DensityOperator::new(acc, Some((rep.left_dim(), rep.right_dim())))
}

/// The auxiliary state sum of xi_m * right_m (x) right_m on H2 (x) H2.
pub fn sigma2_of(rep: &SeparableRepresentation) -> Result<DensityOperator> {
    if rep.symmetrized() {
        return Err(Error::SymmetrizedRepUnsupported);
    }
    two_copy(rep, |t| &t.right)
}

/// The auxiliary state sum of xi_m * left_m (x) left_m on H1 (x) H1.
pub fn sigma1_of(rep: &SeparableRepresentation) -> Result<DensityOperator> {
    if rep.symmetrized() {
        return Err(Error::SymmetrizedRepUnsupported);
    }
    two_copy(rep, |t| &t.left)
}

fn two_copy(
    rep: &SeparableRepresentation,
    pick: impl Fn(&RepTerm) -> &DensityOperator,
) -> Result<DensityOperator> {
    let d = pick(&rep.terms()[0]).dim();
    let mut acc = ComplexMatrix::zeros(d * d);
    for t in rep.terms() {
        let f = pick(t).matrix();
        acc = acc.add(&kron(f, f).scale(t.weight));
    }
    DensityOperator::new(acc, Some((d, d)))
}

/// The symmetric-representation auxiliary state
/// sum of (xi_m / 2) * (left_m (x) left_m + right_m (x) right_m).
pub fn sigma_sym_of(rep: &SeparableRepresentation) -> Result<DensityOperator> {
    let d = rep.left_dim();
    if d != rep.right_dim() {
        return Err(Error::DimMismatch { left: d, right: rep.right_dim() });
    }
    let mut acc = ComplexMatrix::zeros(d * d);
    for t in rep.terms() {
        let l = t.left.matrix();
        let r = t.right.matrix();
        acc = acc.add(&kron(l, l).add(&kron(r, r)).scale(t.weight * 0.5));
    }
    DensityOperator::new(acc, Some((d, d)))
}

/// Convex mixture of two representations of the same state: term lists are
/// concatenated with weights scaled by alpha and 1 - alpha.
pub fn mix_representations(
    r1: &SeparableRepresentation,
    r2: &SeparableRepresentation,
    alpha: f64,
) -> Result<SeparableRepresentation> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::OutOfRange { name: "alpha", value: alpha, limit: 1.0 });
    }
    if r1.symmetrized() != r2.symmetrized()
        || r1.left_dim() != r2.left_dim()
        || r1.right_dim() != r2.right_dim()
    {
        return Err(Error::IncompatibleReps {
            reason: "mismatched dimensions or symmetrization flags".into(),
        });
    }
    let s1 = assemble(r1)?;
    let s2 = assemble(r2)?;
    let defect = s1.matrix().max_abs_diff(s2.matrix());
    if defect > 1e-9 {
        return Err(Error::DifferentStates { defect });
    }
    if alpha == 1.0 {
        return Ok(r1.clone());
    }
    if alpha == 0.0 {
        return Ok(r2.clone());
    }
    let mut terms = Vec::with_capacity(r1.terms().len() + r2.terms().len());
    for t in r1.terms() {
        terms.push(RepTerm { weight: alpha * t.weight, ..t.clone() });
    }
    for t in r2.terms() {
        terms.push(RepTerm { weight: (1.0 - alpha) * t.weight, ..t.clone() });
    }
    SeparableRepresentation::new(terms, r1.symmetrized())
}

/// Invariance of a bipartite state under conjugation by the flip operator.
pub fn is_swap_symmetric(rho: &DensityOperator, tol: f64) -> Result<bool> {
    match rho.factor_dims() {
        Some((d1, d2)) if d1 == d2 => {
            let s = swap_operator(d1);
            let conj = s.matmul(rho.matrix()).matmul(&s);
            Ok(conj.max_abs_diff(rho.matrix()) <= tol)
        }
        other => Err(Error::NotBipartiteSquare { factor_dims: other }),
    }
}

/// True when every term has identical left and right factors.
pub fn is_special_form(rep: &SeparableRepresentation, tol: f64) -> bool {
    rep.terms()
        .iter()
        .all(|t| t.left.matrix().max_abs_diff(t.right.matrix()) <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::swap_operator;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn make_density_validates() {
        assert!(DensityOperator::new(ComplexMatrix::identity(2).scale(0.5), None).is_ok());
        let bad_trace = ComplexMatrix::diag(&[c(0.6, 0.0), c(0.5, 0.0)]);
        assert!(matches!(
            DensityOperator::new(bad_trace, None),
            Err(Error::TraceNotOne { .. })
        ));
        let not_psd = ComplexMatrix::diag(&[c(1.2, 0.0), c(-0.2, 0.0)]);
        assert!(matches!(DensityOperator::new(not_psd, None), Err(Error::NotPsd { .. })));
        let mut skew = ComplexMatrix::diag(&[c(0.5, 0.0), c(0.5, 0.0)]);
        skew.set(0, 1, c(0.0, 0.3));
        assert!(matches!(DensityOperator::new(skew, None), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn rho_zero_diagonal_and_symmetric() {
        let r = rho_zero();
        let m = r.matrix();
        for (i, want) in [0.0, 0.5, 0.5, 0.0].iter().enumerate() {
            assert!((m.get(i, i).re - want).abs() < 1e-15);
        }
        assert!((m.trace().re - 1.0).abs() < 1e-15);
        assert!(is_swap_symmetric(&r, 1e-12).unwrap());
    }

    #[test]
    fn assemble_single_term_is_product() {
        let rho = DensityOperator::pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let tau = DensityOperator::maximally_mixed(2);
        let rep = SeparableRepresentation::new(
            vec![RepTerm { weight: 1.0, left: rho.clone(), right: tau.clone() }],
            false,
        )
        .unwrap();
        let s = assemble(&rep).unwrap();
        assert!(s.matrix().approx_eq(&kron(rho.matrix(), tau.matrix()), 1e-14));
    }

    #[test]
    fn assemble_reproduces_rho_zero() {
        let plain = assemble(&SeparableRepresentation::rho_zero_plain()).unwrap();
        let symmetric = assemble(&SeparableRepresentation::rho_zero_symmetric()).unwrap();
        let target = rho_zero();
        assert!(plain.matrix().approx_eq(target.matrix(), 1e-14));
        assert!(symmetric.matrix().approx_eq(target.matrix(), 1e-14));
    }

    #[test]
    fn sigma2_of_rho_zero_rep() {
        let rep = SeparableRepresentation::rho_zero_plain();
        let sigma2 = sigma2_of(&rep).unwrap();
        // (|down down><down down| + |up up><up up|) / 2: diagonal (1/2,0,0,1/2).
        let m = sigma2.matrix();
        for (i, want) in [0.5, 0.0, 0.0, 0.5].iter().enumerate() {
            assert!((m.get(i, i).re - want).abs() < 1e-15);
        }
        let sigma1 = sigma1_of(&rep).unwrap();
        assert!(sigma1.matrix().approx_eq(m, 1e-14));
    }

    #[test]
    fn sigma2_rejects_symmetrized() {
        let rep = SeparableRepresentation::rho_zero_symmetric();
        assert!(matches!(sigma2_of(&rep), Err(Error::SymmetrizedRepUnsupported)));
    }

    #[test]
    fn special_form_sigma_coincides_with_state() {
        let rho = DensityOperator::pure(&[c(0.6, 0.0), c(0.8, 0.0)]).unwrap();
        let tau = DensityOperator::pure(&[c(0.8, 0.0), c(0.0, -0.6)]).unwrap();
        let rep = SeparableRepresentation::new(
            vec![
                RepTerm { weight: 0.4, left: rho.clone(), right: rho },
                RepTerm { weight: 0.6, left: tau.clone(), right: tau },
            ],
            true,
        )
        .unwrap();
        assert!(is_special_form(&rep, 1e-12));
        let sigma = sigma_sym_of(&rep).unwrap();
        let rho_s = assemble(&rep).unwrap();
        assert!(sigma.matrix().approx_eq(rho_s.matrix(), 1e-12));
    }

    #[test]
    fn sigma_sym_of_rho_zero_rep() {
        let rep = SeparableRepresentation::rho_zero_symmetric();
        let sigma = sigma_sym_of(&rep).unwrap();
        for (i, want) in [0.5, 0.0, 0.0, 0.5].iter().enumerate() {
            assert!((sigma.matrix().get(i, i).re - want).abs() < 1e-15);
        }
    }

    #[test]
    fn rho_zero_rep_is_not_special_form() {
        assert!(!is_special_form(&SeparableRepresentation::rho_zero_plain(), 1e-9));
    }

    #[test]
    fn swap_symmetry_cases() {
        let up = DensityOperator::pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let down = DensityOperator::pure(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let product = DensityOperator::new(
            kron(up.matrix(), down.matrix()),
            Some((2, 2)),
        )
        .unwrap();
        assert!(!is_swap_symmetric(&product, 1e-12).unwrap());
        let mixed = DensityOperator::new(
            ComplexMatrix::identity(4).scale(0.25),
            Some((2, 2)),
        )
        .unwrap();
        assert!(is_swap_symmetric(&mixed, 1e-12).unwrap());
        let unfactored = DensityOperator::maximally_mixed(4);
        assert!(matches!(
            is_swap_symmetric(&unfactored, 1e-12),
            Err(Error::NotBipartiteSquare { .. })
        ));
    }

    #[test]
    fn mixing_endpoints_and_linearity() {
        // Two distinct representations of I4/4.
        let up = DensityOperator::pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let down = DensityOperator::pure(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let plus = DensityOperator::pure(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let minus = DensityOperator::pure(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let mixed = DensityOperator::maximally_mixed(2);
        let r1 = SeparableRepresentation::new(
            vec![
                RepTerm { weight: 0.5, left: mixed.clone(), right: up },
                RepTerm { weight: 0.5, left: mixed.clone(), right: down },
            ],
            false,
        )
        .unwrap();
        let r2 = SeparableRepresentation::new(
            vec![
                RepTerm { weight: 0.5, left: mixed.clone(), right: plus },
                RepTerm { weight: 0.5, left: mixed, right: minus },
            ],
            false,
        )
        .unwrap();

        assert_eq!(mix_representations(&r1, &r2, 1.0).unwrap().terms().len(), 2);
        assert_eq!(mix_representations(&r1, &r2, 0.0).unwrap().terms().len(), 2);

        let alpha = 0.3;
        let mix = mix_representations(&r1, &r2, alpha).unwrap();
        assert!(assemble(&mix)
            .unwrap()
            .matrix()
            .approx_eq(assemble(&r1).unwrap().matrix(), 1e-10));
        let lhs = sigma2_of(&mix).unwrap();
        let rhs = sigma2_of(&r1)
            .unwrap()
            .matrix()
            .scale(alpha)
            .add(&sigma2_of(&r2).unwrap().matrix().scale(1.0 - alpha));
        assert!(lhs.matrix().max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn mixing_rejects_different_states() {
        let up = DensityOperator::pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let down = DensityOperator::pure(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r1 = SeparableRepresentation::new(
            vec![RepTerm { weight: 1.0, left: up.clone(), right: up.clone() }],
            false,
        )
        .unwrap();
        let r2 = SeparableRepresentation::new(
            vec![RepTerm { weight: 1.0, left: down.clone(), right: down }],
            false,
        )
        .unwrap();
        assert!(matches!(
            mix_representations(&r1, &r2, 0.5),
            Err(Error::DifferentStates { .. })
        ));
    }

    #[test]
    fn two_copy_states_are_swap_symmetric() {
        let rep = SeparableRepresentation::rho_zero_plain();
        for sigma in [sigma1_of(&rep).unwrap(), sigma2_of(&rep).unwrap()] {
            let s = swap_operator(2);
            let conj = s.matmul(sigma.matrix()).matmul(&s);
            assert!(conj.max_abs_diff(sigma.matrix()) <= 1e-12);
        }
    }
}
