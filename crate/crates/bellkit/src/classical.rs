//! Classical (local hidden variable) measurement model on a finite
//! parameter space: distributions, random-variable observables, exact
//! classical correlations, and the classical Bell / extended CHSH checks.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expectations::CorrelationRecord;
use crate::inequalities::{GammaVector, InequalityReport};

/// One bounded real-valued observable: a value per parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalObservable {
    pub bound: f64,
    pub values: Vec<f64>,
}

/// Finite parameter space with a distribution and named observables.
#[derive(Debug, Clone)]
pub struct LhvModel {
    points: Vec<String>,
    probabilities: Vec<f64>,
    observables: BTreeMap<String, ClassicalObservable>,
}

impl LhvModel {
    pub fn new(
        points: Vec<String>,
        probabilities: Vec<f64>,
        observables: BTreeMap<String, ClassicalObservable>,
    ) -> Result<Self> {
        if points.is_empty() || points.len() != probabilities.len() {
            return Err(Error::InvalidModel {
                reason: format!(
                    "{} points but {} probabilities",
                    points.len(),
                    probabilities.len()
                ),
            });
        }
        if let Some(&p) = probabilities.iter().find(|&&p| p < 0.0) {
            return Err(Error::InvalidModel { reason: format!("negative probability {p}") });
        }
        let sum: f64 = probabilities.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidDistribution { sum });
        }
        for (name, obs) in &observables {
            if obs.bound <= 0.0 {
                return Err(Error::NonpositiveBound { bound: obs.bound });
            }
            if obs.values.len() != points.len() {
                return Err(Error::InvalidModel {
                    reason: format!("observable {name:?} has wrong length"),
                });
            }
            // The bound only needs to hold where the distribution is supported.
            for (i, &v) in obs.values.iter().enumerate() {
                if probabilities[i] > 0.0 && v.abs() > obs.bound {
                    return Err(Error::InvalidModel {
                        reason: format!("observable {name:?} exceeds its bound at point {i}"),
                    });
                }
            }
        }
        Ok(Self { points, probabilities, observables })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn observables(&self) -> &BTreeMap<String, ClassicalObservable> {
        &self.observables
    }

    pub fn observable(&self, name: &str) -> Result<&ClassicalObservable> {
        self.observables
            .get(name)
            .ok_or_else(|| Error::UnknownProperty { name: name.to_string() })
    }
}

/// Exact weighted sum over the parameter space: sum of pi(t) f1(t) f2(t).
pub fn classical_correlation(model: &LhvModel, prop1: &str, prop2: &str) -> Result<f64> {
    let f1 = model.observable(prop1)?;
    let f2 = model.observable(prop2)?;
    Ok(model
        .probabilities
        .iter()
        .zip(f1.values.iter().zip(&f2.values))
        .map(|(&p, (&a, &b))| p * a * b)
        .sum())
}

fn record(model_id: &str, a: &str, b: &str, value: f64) -> CorrelationRecord {
    CorrelationRecord {
        state_id: model_id.to_string(),
        setting_pair: (a.to_string(), b.to_string()),
        symmetrized: false,
        value,
    }
}

/// Classical Bell inequality in its perfect correlation form:
/// |<A D1> - <A D2>| <= C1*C2 - (C1/C2) <D1 D2>.
pub fn classical_bell_report(
    model: &LhvModel,
    a: &str,
    d1: &str,
    d2: &str,
    tol: f64,
) -> Result<InequalityReport> {
    let c1 = model.observable(a)?.bound;
    let b1 = model.observable(d1)?.bound;
    let b2 = model.observable(d2)?.bound;
    if b1 != b2 {
        return Err(Error::BoundMismatch { c_alice: b1, c_bob: b2 });
    }
    let e_ad1 = classical_correlation(model, a, d1)?;
    let e_ad2 = classical_correlation(model, a, d2)?;
    let e_dd = classical_correlation(model, d1, d2)?;
    let lhs = (e_ad1 - e_ad2).abs();
    let rhs = c1 * b1 - (c1 / b1) * e_dd;
    let inputs = vec![
        record("lhv", a, d1, e_ad1),
        record("lhv", a, d2, e_ad2),
        record("lhv", d1, d2, e_dd),
    ];
    Ok(make_report("classical_bell", lhs, rhs, tol, inputs))
}

/// Classical extended CHSH:
/// |g1 <AB> + g2 <CB> + g3 <CD> + g4 <AD>| <= 2 g~0 C1 C2.
pub fn classical_extended_chsh(
    model: &LhvModel,
    gammas: &GammaVector,
    a: &str,
    c: &str,
    b: &str,
    d: &str,
    c1: f64,
    c2: f64,
    tol: f64,
) -> Result<InequalityReport> {
    gammas.valid_branch(tol)?;
    let e_ab = classical_correlation(model, a, b)?;
    let e_cb = classical_correlation(model, c, b)?;
    let e_cd = classical_correlation(model, c, d)?;
    let e_ad = classical_correlation(model, a, d)?;
    let lhs = (gammas.g1 * e_ab + gammas.g2 * e_cb + gammas.g3 * e_cd + gammas.g4 * e_ad)
        .abs();
    let rhs = 2.0 * gammas.gamma_tilde() * c1 * c2;
    let inputs = vec![
        record("lhv", a, b, e_ab),
        record("lhv", c, b, e_cb),
        record("lhv", c, d, e_cd),
        record("lhv", a, d, e_ad),
    ];
    Ok(make_report("classical_extended_chsh", lhs, rhs, tol, inputs))
}

fn make_report(
    name: &str,
    lhs: f64,
    rhs: f64,
    tol: f64,
    inputs: Vec<CorrelationRecord>,
) -> InequalityReport {
    let slack = rhs - lhs;
    InequalityReport {
        name: name.to_string(),
        lhs,
        rhs,
        slack,
        violated: slack < -tol,
        tol,
        inputs,
        notes: Vec::new(),
    }
}

/// Seed-deterministic random model: normalized positive distribution and
/// each observable uniform in [-C, C].
pub fn random_model(seed: u64, theta_size: usize, bounds: &BTreeMap<String, f64>) -> LhvModel {
    assert!(theta_size >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..theta_size).map(|_| rng.gen_range(0.01..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let probabilities: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let points = (0..theta_size).map(|i| format!("theta{i}")).collect();
    let observables = bounds
        .iter()
        .map(|(name, &bound)| {
            let values = (0..theta_size).map(|_| rng.gen_range(-bound..=bound)).collect();
            (name.clone(), ClassicalObservable { bound, values })
        })
        .collect();
    LhvModel::new(points, probabilities, observables).expect("generated model is valid")
}
