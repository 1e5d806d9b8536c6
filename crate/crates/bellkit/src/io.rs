//! JSON (de)serialization for states, representations, POVMs and LHV
//! models, plus deterministic report emission.
//!
//! Complex numbers are two-element arrays `[re, im]`; matrices are
//! row-major arrays of rows. All documents carry `"schema": "bellkit/1"`.
//! Report output uses fixed key order and fixed-point 9-decimal numbers so
//! identical inputs produce byte-identical files.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classical::{ClassicalObservable, LhvModel};
use crate::error::{Error, Result};
use crate::inequalities::InequalityReport;
use crate::measurements::{DiscretePovm, OutcomeSet};
use crate::qlinalg::ComplexMatrix;
use crate::states::{DensityOperator, RepTerm, SeparableRepresentation};
use crate::sweep::SweepResult;

pub const SCHEMA: &str = "bellkit/1";

type JsonMatrix = Vec<Vec<[f64; 2]>>;

fn matrix_to_json(m: &ComplexMatrix) -> JsonMatrix {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
        .collect()
}

fn matrix_from_json(rows: &JsonMatrix) -> Result<ComplexMatrix> {
    let dim = rows.len();
    if dim == 0 {
        return Err(Error::Json("empty matrix".into()));
    }
    let mut m = ComplexMatrix::zeros(dim);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(Error::Json(format!(
                "matrix row {i} has {} entries, expected {dim}",
                row.len()
            )));
        }
        for (j, &[re, im]) in row.iter().enumerate() {
            m.set(i, j, Complex64::new(re, im));
        }
    }
    Ok(m)
}

#[derive(Serialize, Deserialize)]
pub struct DensityDoc {
    pub schema: String,
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub factor_dims: Option<(usize, usize)>,
    pub matrix: JsonMatrix,
}

#[derive(Serialize, Deserialize)]
pub struct RepTermDoc {
    pub weight: f64,
    pub left: JsonMatrix,
    pub right: JsonMatrix,
}

#[derive(Serialize, Deserialize)]
pub struct RepresentationDoc {
    pub schema: String,
    pub symmetrized: bool,
    pub terms: Vec<RepTermDoc>,
}

#[derive(Serialize, Deserialize)]
pub struct PovmDoc {
    pub schema: String,
    pub label: String,
    pub bound: f64,
    pub outcomes: Vec<f64>,
    pub effects: Vec<JsonMatrix>,
}

#[derive(Serialize, Deserialize)]
pub struct ObservableDoc {
    pub bound: f64,
    pub values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
pub struct LhvModelDoc {
    pub schema: String,
    pub points: Vec<String>,
    pub probabilities: Vec<f64>,
    pub observables: BTreeMap<String, ObservableDoc>,
}

fn check_schema(schema: &str) -> Result<()> {
    if schema != SCHEMA {
        return Err(Error::Json(format!("unsupported schema {schema:?}, expected {SCHEMA:?}")));
    }
    Ok(())
}

pub fn density_from_json(text: &str) -> Result<DensityOperator> {
    let doc: DensityDoc =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    check_schema(&doc.schema)?;
    let matrix = matrix_from_json(&doc.matrix)?;
    let rho = DensityOperator::new(matrix, doc.factor_dims)?;
    Ok(match doc.label {
        Some(label) => rho.with_label(label),
        None => rho,
    })
}

pub fn density_to_json(rho: &DensityOperator) -> String {
    let doc = DensityDoc {
        schema: SCHEMA.into(),
        label: Some(rho.label().to_string()),
        factor_dims: rho.factor_dims(),
        matrix: matrix_to_json(rho.matrix()),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn representation_from_json(text: &str) -> Result<SeparableRepresentation> {
    let doc: RepresentationDoc =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    check_schema(&doc.schema)?;
    let terms = doc
        .terms
        .iter()
        .map(|t| {
            Ok(RepTerm {
                weight: t.weight,
                left: DensityOperator::new(matrix_from_json(&t.left)?, None)?,
                right: DensityOperator::new(matrix_from_json(&t.right)?, None)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SeparableRepresentation::new(terms, doc.symmetrized)
}

pub fn representation_to_json(rep: &SeparableRepresentation) -> String {
    let doc = RepresentationDoc {
        schema: SCHEMA.into(),
        symmetrized: rep.symmetrized(),
        terms: rep
            .terms()
            .iter()
            .map(|t| RepTermDoc {
                weight: t.weight,
                left: matrix_to_json(t.left.matrix()),
                right: matrix_to_json(t.right.matrix()),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn povm_from_json(text: &str) -> Result<DiscretePovm> {
    let doc: PovmDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    check_schema(&doc.schema)?;
    let outcomes = OutcomeSet::new(doc.outcomes, doc.bound)?;
    let effects = doc
        .effects
        .iter()
        .map(matrix_from_json)
        .collect::<Result<Vec<_>>>()?;
    DiscretePovm::new(doc.label, outcomes, effects)
}

pub fn povm_to_json(p: &DiscretePovm) -> String {
    let doc = PovmDoc {
        schema: SCHEMA.into(),
        label: p.label().to_string(),
        bound: p.bound(),
        outcomes: p.outcomes().values().to_vec(),
        effects: p.effects().iter().map(matrix_to_json).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn lhv_model_from_json(text: &str) -> Result<LhvModel> {
    let doc: LhvModelDoc =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    check_schema(&doc.schema)?;
    let observables = doc
        .observables
        .into_iter()
        .map(|(name, o)| (name, ClassicalObservable { bound: o.bound, values: o.values }))
        .collect();
    LhvModel::new(doc.points, doc.probabilities, observables)
}

pub fn lhv_model_to_json(m: &LhvModel) -> String {
    let doc = LhvModelDoc {
        schema: SCHEMA.into(),
        points: m.points().to_vec(),
        probabilities: m.probabilities().to_vec(),
        observables: m
            .observables()
            .iter()
            .map(|(name, o)| {
                (name.clone(), ObservableDoc { bound: o.bound, values: o.values.clone() })
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Fixed-point, 9-decimal formatting with negative zero normalized away.
pub fn fmt_f64(x: f64) -> String {
    let s = format!("{x:.9}");
    if s == "-0.000000000" {
        "0.000000000".to_string()
    } else {
        s
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("string is serializable")
}

/// Deterministic JSON for an inequality report: fixed key order, 9-decimal
/// fixed-point numbers.
pub fn report_to_json(report: &InequalityReport) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"schema\": {},\n", json_string(SCHEMA)));
    out.push_str(&format!("  \"name\": {},\n", json_string(&report.name)));
    out.push_str(&format!("  \"lhs\": {},\n", fmt_f64(report.lhs)));
    out.push_str(&format!("  \"rhs\": {},\n", fmt_f64(report.rhs)));
    out.push_str(&format!("  \"slack\": {},\n", fmt_f64(report.slack)));
    out.push_str(&format!("  \"violated\": {},\n", report.violated));
    out.push_str(&format!("  \"tol\": {:e},\n", report.tol));
    out.push_str("  \"inputs\": [\n");
    for (i, rec) in report.inputs.iter().enumerate() {
        out.push_str(&format!(
            "    {{\"state\": {}, \"settings\": [{}, {}], \"symmetrized\": {}, \"value\": {}}}{}\n",
            json_string(&rec.state_id),
            json_string(&rec.setting_pair.0),
            json_string(&rec.setting_pair.1),
            rec.symmetrized,
            fmt_f64(rec.value),
            if i + 1 < report.inputs.len() { "," } else { "" },
        ));
    }
    out.push_str("  ],\n");
    out.push_str("  \"notes\": [");
    for (i, note) in report.notes.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&json_string(note));
    }
    out.push_str("]\n}\n");
    out
}

/// One CSV row per input correlation plus the verdict columns.
pub fn report_to_csv(report: &InequalityReport) -> String {
    let mut out =
        String::from("name,setting_1,setting_2,symmetrized,value,lhs,rhs,slack,violated\n");
    for rec in &report.inputs {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            report.name,
            rec.setting_pair.0,
            rec.setting_pair.1,
            rec.symmetrized,
            fmt_f64(rec.value),
            fmt_f64(report.lhs),
            fmt_f64(report.rhs),
            fmt_f64(report.slack),
            report.violated,
        ));
    }
    out
}

/// Deterministic JSON for a sweep result.
pub fn sweep_result_to_json(result: &SweepResult) -> String {
    let settings: Vec<String> = result.best_settings.iter().map(|&t| fmt_f64(t)).collect();
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"schema\": {},\n", json_string(SCHEMA)));
    out.push_str(&format!("  \"best_settings\": [{}],\n", settings.join(", ")));
    out.push_str(&format!("  \"evaluations\": {},\n", result.evaluations));
    out.push_str(&format!("  \"min_slack\": {},\n", fmt_f64(result.min_slack)));
    let report = report_to_json(&result.best_report);
    let indented: String = report
        .lines()
        .enumerate()
        .map(|(i, l)| if i == 0 { format!("  \"best_report\": {l}\n") } else { format!("  {l}\n") })
        .collect();
    out.push_str(indented.trim_end());
    out.push_str("\n}\n");
    out
}

/// The JSON schemas as human-readable documentation, printed by the
/// `schema` subcommand.
pub fn schema_documentation() -> String {
    let rho = crate::states::rho_zero();
    let rep = SeparableRepresentation::rho_zero_symmetric();
    let povm = crate::measurements::spin_observable(0.0);
    let mut bounds = BTreeMap::new();
    bounds.insert("A".to_string(), 1.0);
    bounds.insert("D1".to_string(), 1.0);
    bounds.insert("D2".to_string(), 1.0);
    let model = crate::classical::random_model(0, 2, &bounds);
    format!(
        "All documents carry \"schema\": \"{SCHEMA}\". Complex numbers are\n\
         [re, im] pairs; matrices are row-major arrays of rows.\n\n\
         Density operator example:\n{}\n\n\
         Separable representation example:\n{}\n\n\
         POVM example:\n{}\n\n\
         LHV model example:\n{}\n",
        density_to_json(&rho),
        representation_to_json(&rep),
        povm_to_json(&povm),
        lhv_model_to_json(&model),
    )
}
