//! Acceptance suite: one test per release criterion. Each test prints a
//! single pass line; a failed assertion marks the criterion failed.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bellkit::classical::{classical_bell_report, classical_extended_chsh, random_model};
use bellkit::inequalities::{
    bell_original, condition_sor, condition_vbi, quantum_bell_analogue, scalar_bound,
    SignCondition, INEQ_TOL,
};
use bellkit::measurements::spin_observable;
use bellkit::states::{
    assemble, mix_representations, rho_zero, sigma2_of, DensityOperator, RepTerm,
    SeparableRepresentation,
};
use bellkit::sweep::{
    chsh_sweep, quantum_analogue_sweep, separable_soundness_sweep, SweepConfig, SweepTarget,
};
use bellkit::{correlation, GammaVector};

fn pass(number: usize, name: &str) {
    println!("acceptance {number} ({name}): PASS");
}

#[test]
fn criterion_01_counterexample_reproduction() {
    let rho = rho_zero();
    let (a, b, c) = (spin_observable(0.0), spin_observable(PI / 6.0), spin_observable(PI / 3.0));
    let e_ab = correlation(&rho, &a, &b, false).unwrap();
    let e_ac = correlation(&rho, &a, &c, false).unwrap();
    let e_bc = correlation(&rho, &b, &c, false).unwrap();
    let report = bell_original(&e_ab, &e_ac, &e_bc, 1.0, 1.0, INEQ_TOL).unwrap();
    assert!((report.lhs - 1.0).abs() < 1e-12, "lhs = {}", report.lhs);
    assert!((report.rhs - 0.75).abs() < 1e-12, "rhs = {}", report.rhs);
    assert!(report.violated);
    pass(1, "counterexample reproduction");
}

#[test]
fn criterion_02_closed_form_correlations() {
    let rho = rho_zero();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let a = rng.gen_range(0.0..PI);
        let b = rng.gen_range(0.0..PI);
        let want = -(2.0 * a).cos() * (2.0 * b).cos();
        let pa = spin_observable(a);
        let pb = spin_observable(b);
        let plain = correlation(&rho, &pa, &pb, false).unwrap().value;
        let symmetric = correlation(&rho, &pa, &pb, true).unwrap().value;
        assert!((plain - want).abs() < 1e-12, "plain at ({a}, {b})");
        assert!((symmetric - want).abs() < 1e-12, "symmetrized at ({a}, {b})");
    }
    pass(2, "closed-form correlation oracle");
}

#[test]
fn criterion_03_chsh_soundness() {
    let cfg = SweepConfig::new(SweepTarget::Chsh, 20).unwrap();
    let result = chsh_sweep(&rho_zero(), &cfg).unwrap();
    assert!(result.best_report.lhs <= 2.0 + 1e-9, "max = {}", result.best_report.lhs);
    assert!((result.best_report.lhs - 2.0).abs() < 1e-9, "max = {}", result.best_report.lhs);
    assert!(!result.best_report.violated);
    pass(3, "CHSH soundness on the reference state");
}

#[test]
fn criterion_04_quantum_analogue_grid() {
    let rep = SeparableRepresentation::rho_zero_symmetric();
    let cfg = SweepConfig::new(SweepTarget::QuantumAnalogue, 32).unwrap();
    let result = quantum_analogue_sweep(&rep, &cfg).unwrap();
    assert!(result.min_slack >= -1e-9, "min slack = {}", result.min_slack);
    assert!(!result.best_report.violated);
    let report = quantum_bell_analogue(
        &rep,
        &spin_observable(0.0),
        &spin_observable(PI / 6.0),
        &spin_observable(PI / 3.0),
        INEQ_TOL,
    )
    .unwrap();
    assert!((report.rhs - 1.25).abs() < 1e-12, "rhs = {}", report.rhs);
    pass(4, "quantum Bell analogue on a 32^3 grid");
}

#[test]
fn criterion_05_separable_soundness() {
    let mut cfg = SweepConfig::new(SweepTarget::ExtendedChsh, 2).unwrap();
    cfg.seed = 5;
    cfg.sample_count = 1000;
    let result = separable_soundness_sweep(&cfg).unwrap();
    assert!(result.min_slack >= -1e-9, "min slack = {}", result.min_slack);
    pass(5, "separable soundness over 1000 randomized draws");
}

#[test]
fn criterion_06_classical_suite() {
    let mut bounds = BTreeMap::new();
    for name in ["A", "C", "D1", "D2"] {
        bounds.insert(name.to_string(), 1.0);
    }
    let gammas =
        [GammaVector::new(1.0, 1.0, 1.0, -1.0).unwrap(), GammaVector::new(2.0, 1.0, -2.0, 1.0).unwrap()];
    let mut min_slack = f64::INFINITY;
    for seed in 0..1000u64 {
        let size = 1 + (seed % 8) as usize;
        let model = random_model(seed, size, &bounds);
        let bell = classical_bell_report(&model, "A", "D1", "D2", INEQ_TOL).unwrap();
        assert!(!bell.violated, "classical Bell violated at seed {seed}");
        min_slack = min_slack.min(bell.slack);
        for g in &gammas {
            let ext =
                classical_extended_chsh(&model, g, "A", "C", "D1", "D2", 1.0, 1.0, INEQ_TOL)
                    .unwrap();
            assert!(!ext.violated, "classical extended CHSH violated at seed {seed}");
            min_slack = min_slack.min(ext.slack);
        }
    }
    assert!(min_slack >= -1e-12, "min slack = {min_slack}");
    pass(6, "classical hidden-variable suite");
}

fn basis_rep(vectors: [[Complex64; 2]; 2]) -> SeparableRepresentation {
    let states: Vec<DensityOperator> =
        vectors.iter().map(|v| DensityOperator::pure(v).unwrap()).collect();
    let mut terms = Vec::new();
    for left in &states {
        for right in &states {
            terms.push(RepTerm { weight: 0.25, left: left.clone(), right: right.clone() });
        }
    }
    SeparableRepresentation::new(terms, false).unwrap()
}

#[test]
fn criterion_07_sigma2_convexity() {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    // Two distinct product decompositions of the maximally mixed two-qubit
    // state: computational basis and the rotated +-45 degree basis.
    let z_rep = basis_rep([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]);
    let s = 1.0 / 2.0_f64.sqrt();
    let x_rep = basis_rep([[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]]);
    let s2_a = sigma2_of(&z_rep).unwrap();
    let s2_b = sigma2_of(&x_rep).unwrap();
    for alpha in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let mixed = mix_representations(&z_rep, &x_rep, alpha).unwrap();
        let got = sigma2_of(&mixed).unwrap();
        let want = s2_a.matrix().scale(alpha).add(&s2_b.matrix().scale(1.0 - alpha));
        assert!(
            got.matrix().max_abs_diff(&want) < 1e-12,
            "convexity fails at alpha = {alpha}"
        );
    }
    pass(7, "convexity of the two-copy state set");
}

fn random_qubit(rng: &mut ChaCha8Rng) -> DensityOperator {
    loop {
        let v: Vec<Complex64> = (0..2)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3 {
            return DensityOperator::pure(&v).unwrap();
        }
    }
}

#[test]
fn criterion_08_special_form_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for draw in 0..100 {
        // Special form: every term is tau (x) tau, so sigma coincides with
        // the represented state.
        let n_terms = rng.gen_range(1..=4);
        let raw: Vec<f64> = (0..n_terms).map(|_| rng.gen_range(0.1..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let terms: Vec<RepTerm> = raw
            .iter()
            .map(|&w| {
                let tau = random_qubit(&mut rng);
                RepTerm { weight: w / total, left: tau.clone(), right: tau }
            })
            .collect();
        let rep = SeparableRepresentation::new(terms, false).unwrap();
        let rho_s = assemble(&rep).unwrap();
        let alice = spin_observable(rng.gen_range(0.0..PI));
        let b1 = spin_observable(rng.gen_range(0.0..PI));
        let b2 = spin_observable(rng.gen_range(0.0..PI));
        let report = quantum_bell_analogue(&rep, &alice, &b1, &b2, INEQ_TOL).unwrap();
        let direct = 1.0 - correlation(&rho_s, &b1, &b2, true).unwrap().value;
        assert!((report.rhs - direct).abs() < 1e-10, "draw {draw}: rhs mismatch");
        let same = correlation(&rho_s, &b1, &b1, true).unwrap().value;
        assert!(same >= -1e-10, "draw {draw}: same-setting correlation {same}");
    }
    pass(8, "special-form reduction");
}

#[test]
fn criterion_09_condition_checkers() {
    let rep = SeparableRepresentation::rho_zero_plain();
    let rho = rho_zero();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let b = spin_observable(rng.gen_range(0.01..PI / 2.0 - 0.01));
        let c = spin_observable(rng.gen_range(0.01..PI / 2.0 - 0.01));
        let outcome = condition_vbi(&rep, &b, &c, &rho, INEQ_TOL).unwrap();
        assert_eq!(outcome.sign, SignCondition::MinusSign);
        assert!(outcome.sign_consistent);
        assert_eq!(condition_sor(&rep, &b, INEQ_TOL), SignCondition::MinusSign);
    }
    pass(9, "condition checkers on the reference representation");
}

#[test]
fn criterion_10_scalar_lemma() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..1_000_000 {
        let x = rng.gen_range(-1.0..=1.0);
        let y = rng.gen_range(-1.0..=1.0);
        let bound = scalar_bound(x, y).unwrap();
        assert!((x - y).abs() <= bound + 1e-15, "lemma fails at ({x}, {y})");
    }
    pass(10, "scalar lemma over one million samples");
}
