//! Python bindings: density operators, separable representations, POVMs,
//! the inequality reports, and the sweep entry points.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use bellkit::measurements::{DiscretePovm, OutcomeSet};
use bellkit::qlinalg::ComplexMatrix;
use bellkit::states::{RepTerm, SeparableRepresentation};
use bellkit::sweep::{SweepConfig, SweepTarget};
use bellkit::{DensityOperator, GammaVector, InequalityReport, INEQ_TOL};

fn err(e: bellkit::Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.name()))
}

fn matrix_from_rows(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    let dim = rows.len();
    let mut m = ComplexMatrix::zeros(dim);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(PyValueError::new_err(format!(
                "row {i} has {} entries, expected {dim}",
                row.len()
            )));
        }
        for (j, &z) in row.iter().enumerate() {
            m.set(i, j, z);
        }
    }
    Ok(m)
}

fn matrix_to_rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.dim()).map(|i| (0..m.dim()).map(|j| m.get(i, j)).collect()).collect()
}

#[pyclass(name = "DensityOperator")]
#[derive(Clone)]
struct PyDensity {
    inner: DensityOperator,
}

#[pymethods]
impl PyDensity {
    #[new]
    #[pyo3(signature = (matrix, factor_dims=None, label=None))]
    fn new(
        matrix: Vec<Vec<Complex64>>,
        factor_dims: Option<(usize, usize)>,
        label: Option<String>,
    ) -> PyResult<Self> {
        let m = matrix_from_rows(matrix)?;
        let rho = DensityOperator::new(m, factor_dims).map_err(err)?;
        Ok(Self { inner: if let Some(l) = label { rho.with_label(l) } else { rho } })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        matrix_to_rows(self.inner.matrix())
    }

    fn to_json(&self) -> String {
        bellkit::io::density_to_json(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("DensityOperator(dim={}, label={:?})", self.inner.dim(), self.inner.label())
    }
}

#[pyclass(name = "SeparableRepresentation")]
#[derive(Clone)]
struct PyRep {
    inner: SeparableRepresentation,
}

#[pymethods]
impl PyRep {
    #[new]
    #[pyo3(signature = (terms, symmetrized=false))]
    fn new(terms: Vec<(f64, PyDensity, PyDensity)>, symmetrized: bool) -> PyResult<Self> {
        let terms = terms
            .into_iter()
            .map(|(weight, left, right)| RepTerm {
                weight,
                left: left.inner,
                right: right.inner,
            })
            .collect();
        Ok(Self { inner: SeparableRepresentation::new(terms, symmetrized).map_err(err)? })
    }

    #[getter]
    fn symmetrized(&self) -> bool {
        self.inner.symmetrized()
    }

    fn assemble(&self) -> PyResult<PyDensity> {
        Ok(PyDensity { inner: bellkit::states::assemble(&self.inner).map_err(err)? })
    }

    fn sigma(&self) -> PyResult<PyDensity> {
        Ok(PyDensity { inner: bellkit::sigma_sym_of(&self.inner).map_err(err)? })
    }

    fn to_json(&self) -> String {
        bellkit::io::representation_to_json(&self.inner)
    }
}

#[pyclass(name = "Povm")]
#[derive(Clone)]
struct PyPovm {
    inner: DiscretePovm,
}

#[pymethods]
impl PyPovm {
    #[new]
    fn new(
        label: String,
        outcomes: Vec<f64>,
        bound: f64,
        effects: Vec<Vec<Vec<Complex64>>>,
    ) -> PyResult<Self> {
        let outcomes = OutcomeSet::new(outcomes, bound).map_err(err)?;
        let effects = effects
            .into_iter()
            .map(matrix_from_rows)
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self { inner: DiscretePovm::new(label, outcomes, effects).map_err(err)? })
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    #[getter]
    fn bound(&self) -> f64 {
        self.inner.bound()
    }

    #[getter]
    fn outcomes(&self) -> Vec<f64> {
        self.inner.outcomes().values().to_vec()
    }

    fn to_json(&self) -> String {
        bellkit::io::povm_to_json(&self.inner)
    }
}

#[pyclass(name = "Report")]
#[derive(Clone)]
struct PyReport {
    inner: InequalityReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn lhs(&self) -> f64 {
        self.inner.lhs
    }

    #[getter]
    fn rhs(&self) -> f64 {
        self.inner.rhs
    }

    #[getter]
    fn slack(&self) -> f64 {
        self.inner.slack
    }

    #[getter]
    fn violated(&self) -> bool {
        self.inner.violated
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.inner.notes.clone()
    }

    fn to_json(&self) -> String {
        bellkit::io::report_to_json(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Report(name={:?}, lhs={}, rhs={}, violated={})",
            self.inner.name, self.inner.lhs, self.inner.rhs, self.inner.violated
        )
    }
}

#[pyfunction]
fn rho_zero() -> PyDensity {
    PyDensity { inner: bellkit::rho_zero() }
}

#[pyfunction]
fn rho_zero_representation(symmetrized: bool) -> PyRep {
    PyRep {
        inner: if symmetrized {
            SeparableRepresentation::rho_zero_symmetric()
        } else {
            SeparableRepresentation::rho_zero_plain()
        },
    }
}

#[pyfunction]
fn spin_observable(theta: f64) -> PyPovm {
    PyPovm { inner: bellkit::spin_observable(theta) }
}

#[pyfunction]
#[pyo3(signature = (state, p1, p2, symmetrized=false))]
fn correlation(state: &PyDensity, p1: &PyPovm, p2: &PyPovm, symmetrized: bool) -> PyResult<f64> {
    Ok(bellkit::correlation(&state.inner, &p1.inner, &p2.inner, symmetrized)
        .map_err(err)?
        .value)
}

#[pyfunction]
#[pyo3(signature = (state, p1, p2, b1, b2, symmetrized=false))]
fn joint_probability(
    state: &PyDensity,
    p1: &PyPovm,
    p2: &PyPovm,
    b1: Vec<f64>,
    b2: Vec<f64>,
    symmetrized: bool,
) -> PyResult<f64> {
    bellkit::joint_probability(&state.inner, &p1.inner, &p2.inner, &b1, &b2, symmetrized)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (state, a, b, c, c1=1.0, c2=1.0, tol=INEQ_TOL))]
fn bell_original(
    state: &PyDensity,
    a: &PyPovm,
    b: &PyPovm,
    c: &PyPovm,
    c1: f64,
    c2: f64,
    tol: f64,
) -> PyResult<PyReport> {
    let e_ab = bellkit::correlation(&state.inner, &a.inner, &b.inner, false).map_err(err)?;
    let e_ac = bellkit::correlation(&state.inner, &a.inner, &c.inner, false).map_err(err)?;
    let e_bc = bellkit::correlation(&state.inner, &b.inner, &c.inner, false).map_err(err)?;
    Ok(PyReport {
        inner: bellkit::bell_original(&e_ab, &e_ac, &e_bc, c1, c2, tol).map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (state, a, b, c, d, c1=1.0, c2=1.0, tol=INEQ_TOL))]
#[allow(clippy::too_many_arguments)]
fn chsh(
    state: &PyDensity,
    a: &PyPovm,
    b: &PyPovm,
    c: &PyPovm,
    d: &PyPovm,
    c1: f64,
    c2: f64,
    tol: f64,
) -> PyResult<PyReport> {
    let e_ab = bellkit::correlation(&state.inner, &a.inner, &b.inner, false).map_err(err)?;
    let e_cb = bellkit::correlation(&state.inner, &c.inner, &b.inner, false).map_err(err)?;
    let e_cd = bellkit::correlation(&state.inner, &c.inner, &d.inner, false).map_err(err)?;
    let e_ad = bellkit::correlation(&state.inner, &a.inner, &d.inner, false).map_err(err)?;
    Ok(PyReport { inner: bellkit::chsh_report(&e_ab, &e_cb, &e_cd, &e_ad, c1, c2, tol) })
}

#[pyfunction]
#[pyo3(signature = (rep, alice, bob1, bob2, tol=INEQ_TOL))]
fn quantum_bell_analogue(
    rep: &PyRep,
    alice: &PyPovm,
    bob1: &PyPovm,
    bob2: &PyPovm,
    tol: f64,
) -> PyResult<PyReport> {
    Ok(PyReport {
        inner: bellkit::quantum_bell_analogue(
            &rep.inner,
            &alice.inner,
            &bob1.inner,
            &bob2.inner,
            tol,
        )
        .map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (rep, alice, bob1, bob2, tol=INEQ_TOL))]
fn separable_bound(
    rep: &PyRep,
    alice: &PyPovm,
    bob1: &PyPovm,
    bob2: &PyPovm,
    tol: f64,
) -> PyResult<PyReport> {
    Ok(PyReport {
        inner: bellkit::separable_bound(&rep.inner, &alice.inner, &bob1.inner, &bob2.inner, tol)
            .map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (state, gammas, a, b, c, d, c1=1.0, c2=1.0, tol=INEQ_TOL))]
#[allow(clippy::too_many_arguments)]
fn extended_chsh(
    state: &PyDensity,
    gammas: (f64, f64, f64, f64),
    a: &PyPovm,
    b: &PyPovm,
    c: &PyPovm,
    d: &PyPovm,
    c1: f64,
    c2: f64,
    tol: f64,
) -> PyResult<PyReport> {
    let g = GammaVector::new(gammas.0, gammas.1, gammas.2, gammas.3).map_err(err)?;
    let e_ab = bellkit::correlation(&state.inner, &a.inner, &b.inner, false).map_err(err)?;
    let e_cb = bellkit::correlation(&state.inner, &c.inner, &b.inner, false).map_err(err)?;
    let e_cd = bellkit::correlation(&state.inner, &c.inner, &d.inner, false).map_err(err)?;
    let e_ad = bellkit::correlation(&state.inner, &a.inner, &d.inner, false).map_err(err)?;
    Ok(PyReport {
        inner: bellkit::extended_chsh(&g, &e_ab, &e_cb, &e_cd, &e_ad, c1, c2, tol)
            .map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (state, resolution=20))]
fn chsh_sweep(state: &PyDensity, resolution: usize) -> PyResult<(Vec<f64>, PyReport)> {
    let cfg = SweepConfig::new(SweepTarget::Chsh, resolution).map_err(err)?;
    let result = bellkit::chsh_sweep(&state.inner, &cfg).map_err(err)?;
    Ok((result.best_settings, PyReport { inner: result.best_report }))
}

#[pyfunction]
#[pyo3(signature = (state, resolution=20))]
fn bell_violation_sweep(state: &PyDensity, resolution: usize) -> PyResult<(Vec<f64>, PyReport)> {
    let cfg = SweepConfig::new(SweepTarget::BellOriginal, resolution).map_err(err)?;
    let result = bellkit::bell_violation_sweep(&state.inner, &cfg).map_err(err)?;
    Ok((result.best_settings, PyReport { inner: result.best_report }))
}

#[pyfunction]
fn density_from_json(text: &str) -> PyResult<PyDensity> {
    Ok(PyDensity { inner: bellkit::io::density_from_json(text).map_err(err)? })
}

#[pyfunction]
fn representation_from_json(text: &str) -> PyResult<PyRep> {
    Ok(PyRep { inner: bellkit::io::representation_from_json(text).map_err(err)? })
}

#[pyfunction]
fn povm_from_json(text: &str) -> PyResult<PyPovm> {
    Ok(PyPovm { inner: bellkit::io::povm_from_json(text).map_err(err)? })
}

#[pymodule]
fn bellkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDensity>()?;
    m.add_class::<PyRep>()?;
    m.add_class::<PyPovm>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(rho_zero, m)?)?;
    m.add_function(wrap_pyfunction!(rho_zero_representation, m)?)?;
    m.add_function(wrap_pyfunction!(spin_observable, m)?)?;
    m.add_function(wrap_pyfunction!(correlation, m)?)?;
    m.add_function(wrap_pyfunction!(joint_probability, m)?)?;
    m.add_function(wrap_pyfunction!(bell_original, m)?)?;
    m.add_function(wrap_pyfunction!(chsh, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_bell_analogue, m)?)?;
    m.add_function(wrap_pyfunction!(separable_bound, m)?)?;
    m.add_function(wrap_pyfunction!(extended_chsh, m)?)?;
    m.add_function(wrap_pyfunction!(chsh_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(bell_violation_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(density_from_json, m)?)?;
    m.add_function(wrap_pyfunction!(representation_from_json, m)?)?;
    m.add_function(wrap_pyfunction!(povm_from_json, m)?)?;
    m.add("INEQ_TOL", INEQ_TOL)?;
    Ok(())
}
