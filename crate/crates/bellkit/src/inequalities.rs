//! The inequality layer: the scalar lemma, original Bell and CHSH, the
//! separable-state upper bounds, the quantum Bell analogue, the sufficient
//! condition checkers, and the extended CHSH inequality.

use crate::error::{Error, Result};
use crate::expectations::{bob_bob_correlation, correlation, CorrelationRecord};
use crate::measurements::{similarity_holds, DiscretePovm};
use crate::states::{
    assemble, mix_representations, sigma_sym_of, DensityOperator, SeparableRepresentation,
};

/// Default tolerance for inequality comparisons, looser than the matrix
/// tolerances so accumulated trace arithmetic cannot flip a verdict.
pub const INEQ_TOL: f64 = 1e-9;

/// Outcome of one inequality evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub violated: bool,
    pub tol: f64,
    pub inputs: Vec<CorrelationRecord>,
    /// Free-form notes (approximation caveats, warnings).
    pub notes: Vec<String>,
}

impl InequalityReport {
    fn build(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tol: f64,
        inputs: Vec<CorrelationRecord>,
    ) -> Self {
        let slack = rhs - lhs;
        Self {
            name: name.into(),
            lhs,
            rhs,
            slack,
            violated: slack < -tol,
            tol,
            inputs,
            notes: Vec::new(),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// Four real coefficients for the extended CHSH inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaVector {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub g4: f64,
}

/// Which branch of the coefficient constraint held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaBranch {
    /// g1*g4 = -g2*g3
    OuterPairing,
    /// g1*g2 = -g3*g4
    AdjacentPairing,
}

impl GammaVector {
    pub fn new(g1: f64, g2: f64, g3: f64, g4: f64) -> Result<Self> {
        if g1.abs() + g2.abs() + g3.abs() + g4.abs() == 0.0 {
            return Err(Error::ZeroGammas);
        }
        Ok(Self { g1, g2, g3, g4 })
    }

    pub fn gamma_tilde(&self) -> f64 {
        self.g1.abs().max(self.g2.abs()).max(self.g3.abs()).max(self.g4.abs())
    }

    /// Checks the coefficient constraint, scale-invariantly relative to
    /// gamma_tilde squared.
    pub fn valid_branch(&self, tol: f64) -> Result<GammaBranch> {
        let scale = self.gamma_tilde().powi(2);
        let residual_first = (self.g1 * self.g4 + self.g2 * self.g3).abs();
        let residual_second = (self.g1 * self.g2 + self.g3 * self.g4).abs();
        if residual_first <= tol * scale {
            Ok(GammaBranch::OuterPairing)
        } else if residual_second <= tol * scale {
            Ok(GammaBranch::AdjacentPairing)
        } else {
            Err(Error::InvalidGammaConstraint { residual_first, residual_second })
        }
    }
}

/// Sign classification used by the sufficient-condition checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignCondition {
    PlusSign,
    MinusSign,
    NotSatisfied,
}

/// Classification against +-1 for Bell's correlation restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellRestriction {
    Plus,
    Minus,
    Neither,
}

/// The scalar lemma |x - y| <= 1 - xy for |x|, |y| <= 1.
pub fn scalar_bound(x: f64, y: f64) -> Result<f64> {
    for (name, v) in [("x", x), ("y", y)] {
        if v.abs() > 1.0 + 1e-12 {
            return Err(Error::OutOfRange { name, value: v, limit: 1.0 });
        }
    }
    Ok(1.0 - x * y)
}

/// The original Bell inequality in its perfect correlation form:
/// |E(a,b) - E(a,c)| <= C1*C2 - (C1/C2) E(b,c).
pub fn bell_original(
    e_ab: &CorrelationRecord,
    e_ac: &CorrelationRecord,
    e_bc: &CorrelationRecord,
    c1: f64,
    c2: f64,
    tol: f64,
) -> Result<InequalityReport> {
    if c1 <= 0.0 {
        return Err(Error::NonpositiveBound { bound: c1 });
    }
    if c2 <= 0.0 {
        return Err(Error::NonpositiveBound { bound: c2 });
    }
    let lhs = (e_ab.value - e_ac.value).abs();
    let rhs = c1 * c2 - (c1 / c2) * e_bc.value;
    Ok(InequalityReport::build(
        "bell_original",
        lhs,
        rhs,
        tol,
        vec![e_ab.clone(), e_ac.clone(), e_bc.clone()],
    ))
}

/// The CHSH combination |E(a,b) + E(c,b) + E(c,d) - E(a,d)|.
pub fn chsh_value(
    e_ab: &CorrelationRecord,
    e_cb: &CorrelationRecord,
    e_cd: &CorrelationRecord,
    e_ad: &CorrelationRecord,
) -> f64 {
    (e_ab.value + e_cb.value + e_cd.value - e_ad.value).abs()
}

/// CHSH report against the bound 2*C1*C2.
pub fn chsh_report(
    e_ab: &CorrelationRecord,
    e_cb: &CorrelationRecord,
    e_cd: &CorrelationRecord,
    e_ad: &CorrelationRecord,
    c1: f64,
    c2: f64,
    tol: f64,
) -> InequalityReport {
    let lhs = chsh_value(e_ab, e_cb, e_cd, e_ad);
    InequalityReport::build(
        "chsh",
        lhs,
        2.0 * c1 * c2,
        tol,
        vec![e_ab.clone(), e_cb.clone(), e_cd.clone(), e_ad.clone()],
    )
}

fn state_of(rep: &SeparableRepresentation) -> Result<DensityOperator> {
    Ok(assemble(rep)?.with_label("rho_s"))
}

fn bound_lhs(
    rep: &SeparableRepresentation,
    alice: &DiscretePovm,
    bob1: &DiscretePovm,
    bob2: &DiscretePovm,
) -> Result<(f64, Vec<CorrelationRecord>)> {
    let rho_s = state_of(rep)?;
    let symmetrized = rep.symmetrized();
    let e1 = correlation(&rho_s, alice, bob1, symmetrized)?;
    let e2 = correlation(&rho_s, alice, bob2, symmetrized)?;
    let lhs = (e1.value - e2.value).abs();
    Ok((lhs, vec![e1, e2]))
}

/// The separable-state upper bound
/// |E(alpha,b1) - E(alpha,b2)| <= C1*C2 - (C1/C2) <l2 l2'>_sigma.
pub fn separable_bound(
    rep: &SeparableRepresentation,
    alice: &DiscretePovm,
    bob1: &DiscretePovm,
    bob2: &DiscretePovm,
    tol: f64,
) -> Result<InequalityReport> {
    let (lhs, mut inputs) = bound_lhs(rep, alice, bob1, bob2)?;
    let aux = bob_bob_correlation(rep, bob1, bob2)?;
    let c1 = alice.bound();
    let c2 = bob1.bound().max(bob2.bound());
    let rhs = c1 * c2 - (c1 / c2) * aux.value;
    inputs.push(aux);
    Ok(InequalityReport::build("separable_bound", lhs, rhs, tol, inputs))
}

/// The infimum form: minimum of the separable bound over the supplied
/// representations and an alpha-grid of their pairwise mixtures. The result
/// is an upper approximation of the true infimum.
pub fn separable_bound_inf(
    reps: &[SeparableRepresentation],
    alice: &DiscretePovm,
    bob1: &DiscretePovm,
    bob2: &DiscretePovm,
    alpha_grid: usize,
    tol: f64,
) -> Result<InequalityReport> {
    if reps.is_empty() {
        return Err(Error::InvalidRepresentation { reason: "no representations supplied".into() });
    }
    let reference = assemble(&reps[0])?;
    for r in &reps[1..] {
        let defect = assemble(r)?.matrix().max_abs_diff(reference.matrix());
        if defect > 1e-9 {
            return Err(Error::DifferentStates { defect });
        }
    }
    let mut best: Option<InequalityReport> = None;
    let mut consider = |report: InequalityReport| match &best {
        Some(b) if b.rhs <= report.rhs => {}
        _ => best = Some(report),
    };
    for r in reps {
        consider(separable_bound(r, alice, bob1, bob2, tol)?);
    }
    if alpha_grid >= 2 {
        for i in 0..reps.len() {
            for j in (i + 1)..reps.len() {
                for k in 1..(alpha_grid - 1) {
                    let alpha = k as f64 / (alpha_grid - 1) as f64;
                    let mixed = mix_representations(&reps[i], &reps[j], alpha)?;
                    consider(separable_bound(&mixed, alice, bob1, bob2, tol)?);
                }
            }
        }
    }
    let mut report = best.expect("at least one representation");
    report.name = "separable_bound_inf".into();
    Ok(report.with_note("rhs is an upper approximation of the infimum over all representations"))
}

/// The two-term linear bound
/// |g1 E1 + g2 E2| <= g0 C1 C2 + (g1 g2 / g0)(C1/C2) <l2 l2'>_sigma.
pub fn two_term_linear_bound(
    gamma1: f64,
    gamma2: f64,
    rep: &SeparableRepresentation,
    alice: &DiscretePovm,
    bob1: &DiscretePovm,
    bob2: &DiscretePovm,
    tol: f64,
) -> Result<InequalityReport> {
    if gamma1.abs() + gamma2.abs() == 0.0 {
        return Err(Error::ZeroGammas);
    }
    let gamma0 = gamma1.abs().max(gamma2.abs());
    let rho_s = state_of(rep)?;
    let symmetrized = rep.symmetrized();
    let e1 = correlation(&rho_s, alice, bob1, symmetrized)?;
    let e2 = correlation(&rho_s, alice, bob2, symmetrized)?;
    let aux = bob_bob_correlation(rep, bob1, bob2)?;
    let c1 = alice.bound();
    let c2 = bob1.bound().max(bob2.bound());
    let lhs = (gamma1 * e1.value + gamma2 * e2.value).abs();
    let rhs = gamma0 * c1 * c2 + (gamma1 * gamma2 / gamma0) * (c1 / c2) * aux.value;
    Ok(InequalityReport::build(
        "two_term_linear_bound",
        lhs,
        rhs,
        tol,
        vec![e1, e2, aux],
    ))
}

/// The quantum analogue of the original Bell inequality:
/// |E(alpha,b1) - E(alpha,b2)| <= C^2 - <l1 l2>_sigma^(b1,b2).
pub fn quantum_bell_analogue(
    rep: &SeparableRepresentation,
    alice: &DiscretePovm,
    bob1: &DiscretePovm,
    bob2: &DiscretePovm,
    tol: f64,
) -> Result<InequalityReport> {
    let c_alice = alice.bound();
    let c_bob = bob1.bound().max(bob2.bound());
    if (c_alice - c_bob).abs() > tol {
        return Err(Error::BoundMismatch { c_alice, c_bob });
    }
    let (lhs, mut inputs) = bound_lhs(rep, alice, bob1, bob2)?;
    let sigma = sigma_sym_of(rep)?.with_label("sigma");
    let aux = correlation(&sigma, bob1, bob2, true)?;
    let rhs = c_alice * c_alice - aux.value;
    inputs.push(aux);
    let mut report = InequalityReport::build("quantum_bell_analogue", lhs, rhs, tol, inputs);
    // The derivation assumes Alice's and Bob's marginal devices agree at the
    // W level; warn when they do not.
    if !similarity_holds(alice, bob1, tol)? {
        report = report.with_note("warning: Alice/Bob similarity condition does not hold");
    }
    Ok(report)
}

/// Equality check <l1 l2>_sigma = +- <l1 l2>_rho_s for the given settings.
/// Ties at zero report the plus sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VbiOutcome {
    pub sign: SignCondition,
    /// Whether the matched sign agrees with the sign of the same-setting
    /// correlation in rho_s, the necessary consistency condition.
    pub sign_consistent: bool,
}

pub fn condition_vbi(
    rep: &SeparableRepresentation,
    bob1: &DiscretePovm,
    bob2: &DiscretePovm,
    rho_s: &DensityOperator,
    tol: f64,
) -> Result<VbiOutcome> {
    let sigma = sigma_sym_of(rep)?.with_label("sigma");
    let lhs = correlation(&sigma, bob1, bob2, true)?.value;
    let rhs = correlation(rho_s, bob1, bob2, true)?.value;
    let sign = if (lhs - rhs).abs() <= tol {
        SignCondition::PlusSign
    } else if (lhs + rhs).abs() <= tol {
        SignCondition::MinusSign
    } else {
        SignCondition::NotSatisfied
    };
    let same_setting = correlation(rho_s, bob1, bob1, true)?.value;
    let sign_consistent = match sign {
        SignCondition::PlusSign => same_setting >= -tol,
        SignCondition::MinusSign => same_setting <= tol,
        SignCondition::NotSatisfied => false,
    };
    Ok(VbiOutcome { sign, sign_consistent })
}

/// Per-term sign condition tr[rho_m W] = +- tr[rho'_m W], one sign across
/// all terms.
pub fn condition_sor(
    rep: &SeparableRepresentation,
    bob1: &DiscretePovm,
    tol: f64,
) -> SignCondition {
    let w = bob1.effect_operator();
    let mut plus_ok = true;
    let mut minus_ok = true;
    for t in rep.terms() {
        let tl = t.left.matrix().matmul(&w).trace().re;
        let tr = t.right.matrix().matmul(&w).trace().re;
        if (tl - tr).abs() > tol {
            plus_ok = false;
        }
        if (tl + tr).abs() > tol {
            minus_ok = false;
        }
    }
    if plus_ok {
        SignCondition::PlusSign
    } else if minus_ok {
        SignCondition::MinusSign
    } else {
        SignCondition::NotSatisfied
    }
}

/// Bell's correlation restriction <l1 l2>_rho^(b,b) = +-1, stated at unit
/// outcome scale only.
pub fn bell_restriction(
    rho_s: &DensityOperator,
    p: &DiscretePovm,
    tol: f64,
) -> Result<BellRestriction> {
    if (p.bound() - 1.0).abs() > 1e-12 {
        return Err(Error::BoundNotUnit { bound: p.bound() });
    }
    let v = correlation(rho_s, p, p, true)?.value;
    if (v - 1.0).abs() <= tol {
        Ok(BellRestriction::Plus)
    } else if (v + 1.0).abs() <= tol {
        Ok(BellRestriction::Minus)
    } else {
        Ok(BellRestriction::Neither)
    }
}

/// The extended CHSH inequality
/// |g1 E(a,b) + g2 E(c,b) + g3 E(c,d) + g4 E(a,d)| <= 2 g~0 C1 C2,
/// valid under the coefficient constraint g1*g4 = -g2*g3 or g1*g2 = -g3*g4.
pub fn extended_chsh(
    gammas: &GammaVector,
    e_ab: &CorrelationRecord,
    e_cb: &CorrelationRecord,
    e_cd: &CorrelationRecord,
    e_ad: &CorrelationRecord,
    c1: f64,
    c2: f64,
    tol: f64,
) -> Result<InequalityReport> {
    let branch = gammas.valid_branch(tol)?;
    let g0 = gammas.gamma_tilde();
    let lhs = (gammas.g1 * e_ab.value
        + gammas.g2 * e_cb.value
        + gammas.g3 * e_cd.value
        + gammas.g4 * e_ad.value)
        .abs();
    let rhs = 2.0 * g0 * c1 * c2;
    let report = InequalityReport::build(
        "extended_chsh",
        lhs,
        rhs,
        tol,
        vec![e_ab.clone(), e_cb.clone(), e_cd.clone(), e_ad.clone()],
    );
    Ok(report.with_note(match branch {
        GammaBranch::OuterPairing => "constraint branch: g1*g4 = -g2*g3",
        GammaBranch::AdjacentPairing => "constraint branch: g1*g2 = -g3*g4",
    }))
}
