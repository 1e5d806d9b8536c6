//! Grid and randomized searches over spin-observable settings: Bell
//! violation maximization, CHSH soundness scans, and randomized
//! separable-soundness checks.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expectations::{correlation, CorrelationRecord};
use crate::inequalities::{
    bell_original, chsh_report, extended_chsh, quantum_bell_analogue, separable_bound,
    two_term_linear_bound, GammaVector, InequalityReport, INEQ_TOL,
};
use crate::measurements::{spin_observable, DiscretePovm, OutcomeSet};
use crate::qlinalg::ComplexMatrix;
use crate::states::{DensityOperator, RepTerm, SeparableRepresentation};

/// Which inequality a sweep drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepTarget {
    BellOriginal,
    Chsh,
    QuantumAnalogue,
    ExtendedChsh,
}

/// What the sweep extremized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    /// argmax of lhs - rhs (violation margin).
    MaxLhsMinusRhs,
    /// argmax of the lhs alone.
    MaxLhs,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub target: SweepTarget,
    /// Grid points per theta axis over [0, pi).
    pub resolution: usize,
    pub seed: u64,
    pub sample_count: usize,
    pub gamma: Option<GammaVector>,
}

impl SweepConfig {
    pub fn new(target: SweepTarget, resolution: usize) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::InvalidConfig {
                reason: format!("resolution {resolution} < 2"),
            });
        }
        Ok(Self { target, resolution, seed: 0, sample_count: 1, gamma: None })
    }
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub best_settings: Vec<f64>,
    pub best_report: InequalityReport,
    pub evaluations: usize,
    pub extremum_kind: ExtremumKind,
    /// Minimum slack seen across the whole sweep.
    pub min_slack: f64,
}

fn two_qubit_check(state: &DensityOperator) -> Result<()> {
    if state.dim() != 4 {
        return Err(Error::WrongDimension { dim: state.dim() });
    }
    Ok(())
}

fn grid_angles(resolution: usize) -> Vec<f64> {
    (0..resolution)
        .map(|k| k as f64 * std::f64::consts::PI / resolution as f64)
        .collect()
}

/// Pairwise correlation table over the angle grid: table[i][j] is the plain
/// correlation tr[rho (J(theta_i) (x) J(theta_j))].
fn correlation_table(state: &DensityOperator, angles: &[f64]) -> Vec<Vec<f64>> {
    let povms: Vec<DiscretePovm> = angles.iter().map(|&t| spin_observable(t)).collect();
    let mut table = vec![vec![0.0; angles.len()]; angles.len()];
    for (i, p) in povms.iter().enumerate() {
        for (j, q) in povms.iter().enumerate() {
            table[i][j] = correlation(state, p, q, false)
                .expect("two-qubit correlation")
                .value;
        }
    }
    table
}

fn record(state: &DensityOperator, a: f64, b: f64, value: f64) -> CorrelationRecord {
    CorrelationRecord {
        state_id: state.label().to_string(),
        setting_pair: (format!("spin({a})"), format!("spin({b})")),
        symmetrized: false,
        value,
    }
}

/// Maximize the Bell-inequality violation margin lhs - rhs over spin
/// settings (theta_a, theta_b, theta_c). Ties break toward the
/// lexicographically smallest settings tuple, so results are
/// schedule-independent.
pub fn bell_violation_sweep(state: &DensityOperator, cfg: &SweepConfig) -> Result<SweepResult> {
    two_qubit_check(state)?;
    let angles = grid_angles(cfg.resolution);
    let table = correlation_table(state, &angles);
    let n = angles.len();
    let mut best: Option<(f64, [usize; 3])> = None;
    let mut min_slack = f64::INFINITY;
    let mut evaluations = 0usize;
    for ia in 0..n {
        for ib in 0..n {
            for ic in 0..n {
                let lhs = (table[ia][ib] - table[ia][ic]).abs();
                let rhs = 1.0 - table[ib][ic];
                let margin = lhs - rhs;
                evaluations += 1;
                min_slack = min_slack.min(-margin);
                let idx = [ia, ib, ic];
                let better = match best {
                    None => true,
                    Some((m, bi)) => margin > m + 1e-15 || ((margin - m).abs() <= 1e-15 && idx < bi),
                };
                if better {
                    best = Some((margin, idx));
                }
            }
        }
    }
    let (_, [ia, ib, ic]) = best.expect("nonempty grid");
    let (ta, tb, tc) = (angles[ia], angles[ib], angles[ic]);
    let report = bell_original(
        &record(state, ta, tb, table[ia][ib]),
        &record(state, ta, tc, table[ia][ic]),
        &record(state, tb, tc, table[ib][ic]),
        1.0,
        1.0,
        INEQ_TOL,
    )?;
    Ok(SweepResult {
        best_settings: vec![ta, tb, tc],
        best_report: report,
        evaluations,
        extremum_kind: ExtremumKind::MaxLhsMinusRhs,
        min_slack,
    })
}

/// Maximize the CHSH combination over spin 4-tuples.
pub fn chsh_sweep(state: &DensityOperator, cfg: &SweepConfig) -> Result<SweepResult> {
    two_qubit_check(state)?;
    let angles = grid_angles(cfg.resolution);
    let table = correlation_table(state, &angles);
    let n = angles.len();
    let mut best: Option<(f64, [usize; 4])> = None;
    let mut evaluations = 0usize;
    for ia in 0..n {
        for ib in 0..n {
            for ic in 0..n {
                for id in 0..n {
                    let value =
                        (table[ia][ib] + table[ic][ib] + table[ic][id] - table[ia][id]).abs();
                    evaluations += 1;
                    let idx = [ia, ib, ic, id];
                    let better = match best {
                        None => true,
                        Some((v, bi)) => {
                            value > v + 1e-15 || ((value - v).abs() <= 1e-15 && idx < bi)
                        }
                    };
                    if better {
                        best = Some((value, idx));
                    }
                }
            }
        }
    }
    let (_, [ia, ib, ic, id]) = best.expect("nonempty grid");
    let report = chsh_report(
        &record(state, angles[ia], angles[ib], table[ia][ib]),
        &record(state, angles[ic], angles[ib], table[ic][ib]),
        &record(state, angles[ic], angles[id], table[ic][id]),
        &record(state, angles[ia], angles[id], table[ia][id]),
        1.0,
        1.0,
        INEQ_TOL,
    );
    let min_slack = report.slack;
    Ok(SweepResult {
        best_settings: vec![angles[ia], angles[ib], angles[ic], angles[id]],
        best_report: report,
        evaluations,
        extremum_kind: ExtremumKind::MaxLhs,
        min_slack,
    })
}

/// Random normalized complex vector.
fn random_pure(rng: &mut ChaCha8Rng, dim: usize) -> DensityOperator {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-6 {
            return DensityOperator::pure(&v).expect("valid pure state");
        }
    }
}

/// Random product representation with up to `max_terms` terms.
pub fn random_representation(
    rng: &mut ChaCha8Rng,
    d1: usize,
    d2: usize,
    max_terms: usize,
    symmetrized: bool,
) -> SeparableRepresentation {
    let n = rng.gen_range(1..=max_terms);
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let terms = raw
        .iter()
        .map(|w| RepTerm {
            weight: w / total,
            left: random_pure(rng, d1),
            right: random_pure(rng, d2),
        })
        .collect();
    SeparableRepresentation::new(terms, symmetrized).expect("valid random representation")
}

/// Random POVM on dimension d: projectors onto the eigenbasis of a random
/// Hermitian matrix, smeared toward white noise by a random amount, with
/// distinct random outcomes in (-bound, bound).
pub fn random_povm(rng: &mut ChaCha8Rng, dim: usize, bound: f64, label: &str) -> DiscretePovm {
    let mut h = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        h.set(i, i, Complex64::new(rng.gen_range(-1.0..1.0), 0.0));
        for j in (i + 1)..dim {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            h.set(i, j, z);
            h.set(j, i, z.conj());
        }
    }
    let (_, vecs) = crate::qlinalg::hermitian_eigen(&h, 1e-8).expect("random Hermitian");
    let noise = rng.gen_range(0.0..0.5);
    let effects: Vec<ComplexMatrix> = (0..dim)
        .map(|k| {
            let col: Vec<Complex64> = (0..dim).map(|r| vecs.get(r, k)).collect();
            let proj = ComplexMatrix::projector(&col);
            proj.scale(1.0 - noise)
                .add(&ComplexMatrix::identity(dim).scale(noise / dim as f64))
        })
        .collect();
    let values: Vec<f64> = loop {
        let draw: Vec<f64> =
            (0..dim).map(|_| rng.gen_range(-bound..bound)).collect();
        let distinct = (0..dim)
            .all(|i| draw[..i].iter().all(|&w| (w - draw[i]).abs() > 1e-6 * bound));
        if distinct {
            break draw;
        }
    };
    let outcomes = OutcomeSet::new(values, bound).expect("valid outcomes");
    DiscretePovm::new(label, outcomes, effects).expect("valid random POVM")
}

fn random_valid_gamma(rng: &mut ChaCha8Rng) -> GammaVector {
    loop {
        let g1: f64 = rng.gen_range(-2.0..2.0);
        let g2: f64 = rng.gen_range(-2.0..2.0);
        let g3: f64 = rng.gen_range(-2.0..2.0);
        if g1.abs() < 0.1 || g2.abs() < 0.1 || g3.abs() < 0.1 {
            continue;
        }
        let g4 = if rng.gen_bool(0.5) {
            -g2 * g3 / g1 // outer pairing
        } else {
            -g1 * g2 / g3 // adjacent pairing: g1 g2 = -g3 g4
        };
        if g4.abs() > 4.0 {
            continue;
        }
        let g = GammaVector::new(g1, g2, g3, g4).expect("nonzero gammas");
        if g.valid_branch(1e-9).is_ok() {
            return g;
        }
    }
}

/// Randomized soundness sweep: draw representations, settings and gamma
/// vectors, evaluate every separable bound, and report the minimum slack.
pub fn separable_soundness_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut min_slack = f64::INFINITY;
    let mut worst: Option<(Vec<f64>, InequalityReport)> = None;
    let mut evaluations = 0usize;
    for _ in 0..cfg.sample_count {
        let dim = if rng.gen_bool(0.5) { 2 } else { 3 };
        let plain_rep = random_representation(&mut rng, dim, dim, 6, false);
        let sym_rep = random_representation(&mut rng, dim, dim, 6, true);
        let c_bound = 1.0;
        let alice = random_povm(&mut rng, dim, c_bound, "alice");
        let bob1 = random_povm(&mut rng, dim, c_bound, "bob1");
        let bob2 = random_povm(&mut rng, dim, c_bound, "bob2");
        let gammas = cfg.gamma.unwrap_or_else(|| random_valid_gamma(&mut rng));

        let mut reports = vec![
            separable_bound(&plain_rep, &alice, &bob1, &bob2, INEQ_TOL)?,
            separable_bound(&sym_rep, &alice, &bob1, &bob2, INEQ_TOL)?,
            two_term_linear_bound(
                rng.gen_range(-2.0..2.0),
                rng.gen_range(0.1..2.0),
                &plain_rep,
                &alice,
                &bob1,
                &bob2,
                INEQ_TOL,
            )?,
            quantum_bell_analogue(&sym_rep, &alice, &bob1, &bob2, INEQ_TOL)?,
        ];
        // Extended CHSH over four settings on the plain representation.
        let rho_s = crate::states::assemble(&plain_rep)?.with_label("rho_s");
        let bob_d = random_povm(&mut rng, dim, c_bound, "bobd");
        let alice_c = random_povm(&mut rng, dim, c_bound, "alicec");
        let e_ab = correlation(&rho_s, &alice, &bob1, false)?;
        let e_cb = correlation(&rho_s, &alice_c, &bob1, false)?;
        let e_cd = correlation(&rho_s, &alice_c, &bob_d, false)?;
        let e_ad = correlation(&rho_s, &alice, &bob_d, false)?;
        reports.push(extended_chsh(
            &gammas, &e_ab, &e_cb, &e_cd, &e_ad, c_bound, c_bound, INEQ_TOL,
        )?);

        for report in reports {
            evaluations += 1;
            if report.slack < min_slack {
                min_slack = report.slack;
                worst = Some((Vec::new(), report));
            }
        }
    }
    let (best_settings, best_report) = worst.expect("sample_count >= 1");
    Ok(SweepResult {
        best_settings,
        best_report,
        evaluations,
        extremum_kind: ExtremumKind::MaxLhsMinusRhs,
        min_slack,
    })
}

/// Grid sweep of the quantum Bell analogue on a symmetric representation.
pub fn quantum_analogue_sweep(
    rep: &SeparableRepresentation,
    cfg: &SweepConfig,
) -> Result<SweepResult> {
    let angles = grid_angles(cfg.resolution);
    let rho_s = crate::states::assemble(rep)?.with_label("rho_s");
    let sigma = crate::states::sigma_sym_of(rep)?.with_label("sigma");
    let povms: Vec<DiscretePovm> = angles.iter().map(|&t| spin_observable(t)).collect();
    let n = angles.len();
    // Correlation tables in rho_s and sigma (symmetrized experiments).
    let mut in_state = vec![vec![0.0; n]; n];
    let mut in_sigma = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            in_state[i][j] = correlation(&rho_s, &povms[i], &povms[j], true)?.value;
            in_sigma[i][j] = correlation(&sigma, &povms[i], &povms[j], true)?.value;
        }
    }
    let mut best: Option<(f64, [usize; 3])> = None;
    let mut min_slack = f64::INFINITY;
    let mut evaluations = 0usize;
    for ia in 0..n {
        for ib in 0..n {
            for ic in 0..n {
                let lhs = (in_state[ia][ib] - in_state[ia][ic]).abs();
                let rhs = 1.0 - in_sigma[ib][ic];
                let margin = lhs - rhs;
                evaluations += 1;
                min_slack = min_slack.min(-margin);
                let idx = [ia, ib, ic];
                let better = match best {
                    None => true,
                    Some((m, bi)) => margin > m + 1e-15 || ((margin - m).abs() <= 1e-15 && idx < bi),
                };
                if better {
                    best = Some((margin, idx));
                }
            }
        }
    }
    let (_, [ia, ib, ic]) = best.expect("nonempty grid");
    let report = quantum_bell_analogue(
        rep,
        &povms[ia],
        &povms[ib],
        &povms[ic],
        INEQ_TOL,
    )?;
    Ok(SweepResult {
        best_settings: vec![angles[ia], angles[ib], angles[ic]],
        best_report: report,
        evaluations,
        extremum_kind: ExtremumKind::MaxLhsMinusRhs,
        min_slack,
    })
}
