//! Joint probabilities and product-expectation values, plus the Bob-Bob
//! auxiliary correlations evaluated on the two-copy states of a
//! representation.

use crate::error::{Error, Result};
use crate::measurements::{joint_expectation_operator, DiscretePovm};
use crate::qlinalg::{kron, sym_tensor, ComplexMatrix};
use crate::states::{sigma2_of, sigma_sym_of, DensityOperator, SeparableRepresentation};

const IMAG_TOL: f64 = 1e-10;

/// A product expectation value together with where it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRecord {
    pub state_id: String,
    pub setting_pair: (String, String),
    pub symmetrized: bool,
    pub value: f64,
}

fn real_trace(m: &ComplexMatrix) -> Result<f64> {
    let t = m.trace();
    if t.im.abs() > IMAG_TOL {
        return Err(Error::ImaginaryTrace { imag: t.im });
    }
    Ok(t.re)
}

fn check_dims(rho: &DensityOperator, p1: &DiscretePovm, p2: &DiscretePovm) -> Result<()> {
    let (d1, d2) = rho.factor_dims().unwrap_or_else(|| {
        // Unfactored states are accepted when the product dimension matches.
        (p1.dim(), rho.dim() / p1.dim().max(1))
    });
    if d1 != p1.dim() || d2 != p2.dim() || d1 * d2 != rho.dim() {
        return Err(Error::DimMismatch { left: rho.dim(), right: p1.dim() * p2.dim() });
    }
    Ok(())
}

/// tr[rho (M1(B1) (x) M2(B2))], clamped to [0, 1].
pub fn joint_probability(
    rho: &DensityOperator,
    p1: &DiscretePovm,
    p2: &DiscretePovm,
    b1: &[f64],
    b2: &[f64],
    symmetrized: bool,
) -> Result<f64> {
    check_dims(rho, p1, p2)?;
    let m1 = p1.subset_effect(b1)?;
    let m2 = p2.subset_effect(b2)?;
    let joint = if symmetrized { sym_tensor(&m1, &m2)? } else { kron(&m1, &m2) };
    let p = real_trace(&rho.matrix().matmul(&joint))?;
    Ok(p.clamp(0.0, 1.0))
}

/// Expectation of the product of outcomes: tr[rho (W1 (x) W2)] (plain) or
/// with the symmetrized tensor product.
pub fn correlation(
    rho: &DensityOperator,
    p1: &DiscretePovm,
    p2: &DiscretePovm,
    symmetrized: bool,
) -> Result<CorrelationRecord> {
    check_dims(rho, p1, p2)?;
    let op = joint_expectation_operator(p1, p2, symmetrized)?;
    let value = real_trace(&rho.matrix().matmul(&op))?;
    Ok(CorrelationRecord {
        state_id: rho.label().to_string(),
        setting_pair: (p1.label().to_string(), p2.label().to_string()),
        symmetrized,
        value,
    })
}

/// The auxiliary correlation tr[sigma {W(b1) (x) W(b2)}_sym] with sigma the
/// two-copy state of the representation (sigma_2 for plain representations,
/// the symmetric sigma otherwise).
pub fn bob_bob_correlation(
    rep: &SeparableRepresentation,
    b1: &DiscretePovm,
    b2: &DiscretePovm,
) -> Result<CorrelationRecord> {
    let sigma = if rep.symmetrized() { sigma_sym_of(rep)? } else { sigma2_of(rep)? };
    let sigma = sigma.with_label(if rep.symmetrized() { "sigma" } else { "sigma2" });
    correlation(&sigma, b1, b2, true)
}
