//! Python bindings for `rmtori`.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde_json::Value;

use rmtori::classify::{profile, AlgebraProfile, AlphaFlag, ClassifyError};
use rmtori::construct::{self, ConstructError};
use rmtori::lattice::{KVector, SL2Matrix};
use rmtori::oracle::{self, SuiteConfig};
use rmtori::quadfield::QuadOrder;
use rmtori::series::hilbert_series;
use rmtori::twist::{self, TwistError};
use rmtori::wire;

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn classify_err(e: ClassifyError) -> PyErr {
    match e {
        ClassifyError::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => value_err(e),
    }
}

fn twist_err(e: TwistError) -> PyErr {
    match e {
        TwistError::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => value_err(e),
    }
}

fn construct_err(e: ConstructError) -> PyErr {
    match e {
        ConstructError::Internal(_) | ConstructError::SearchExhausted(_) => PyRuntimeError::new_err(e.to_string()),
        _ => value_err(e),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    PyModule::import(py, "json")?.call_method1("loads", (v.to_string(),))
}

fn order(alpha: BigInt, beta: BigInt, gamma: BigInt) -> PyResult<QuadOrder> {
    QuadOrder::new(alpha, beta, gamma).map_err(value_err)
}

fn alpha_flag(s: &str) -> PyResult<AlphaFlag> {
    AlphaFlag::parse(s).ok_or_else(|| value_err(format!("alpha flag `{s}` must be trivial or unknown")))
}

/// A pair (g, v0) with its invariants N, M and classification.
#[pyclass(name = "Profile", module = "rmtori_py", frozen)]
struct PyProfile {
    inner: AlgebraProfile,
}

#[pymethods]
impl PyProfile {
    #[new]
    #[pyo3(signature = (g, v0, alpha = "unknown"))]
    fn new(g: [BigInt; 4], v0: (BigInt, BigInt), alpha: &str) -> PyResult<Self> {
        let g = SL2Matrix::from_row_major(g).map_err(value_err)?;
        let inner = profile(&g, &KVector::new(v0.0, v0.1), alpha_flag(alpha)?).map_err(classify_err)?;
        Ok(PyProfile { inner })
    }

    #[getter]
    fn n(&self) -> BigInt {
        self.inner.n.clone()
    }

    #[getter]
    fn m(&self) -> BigInt {
        self.inner.m.clone()
    }

    #[getter]
    fn g(&self) -> [BigInt; 4] {
        self.inner.g.row_major()
    }

    #[getter]
    fn v0(&self) -> (BigInt, BigInt) {
        (self.inner.v0.deg.clone(), self.inner.v0.rk.clone())
    }

    #[getter]
    fn eigen_class(&self) -> &'static str {
        self.inner.class.as_str()
    }

    fn hilbert(&self, horizon: usize) -> Vec<BigInt> {
        self.inner.hilbert_coefficients(horizon)
    }

    /// Verdict labels keyed by property name.
    fn verdicts<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let v = self.inner.verdicts().map_err(classify_err)?;
        to_py(py, &wire::verdict_set_json(&v))
    }

    fn koszul_dual(&self) -> PyResult<PyProfile> {
        let inner = self.inner.koszul_dual().map_err(classify_err)?;
        Ok(PyProfile { inner })
    }

    /// Chi table keyed by "n,m" and the ranks rk(F'_n).
    fn orbit<'py>(&self, py: Python<'py>, horizon: usize) -> PyResult<Bound<'py, PyAny>> {
        let o = twist::twist_orbit(&self.inner, horizon).map_err(twist_err)?;
        to_py(py, &wire::orbit_json(&o))
    }

    fn to_json(&self) -> String {
        wire::profile_json(&self.inner).to_string()
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<PyProfile> {
        let v: Value = serde_json::from_str(s).map_err(value_err)?;
        let inner = wire::parse_profile(&v).map_err(value_err)?;
        Ok(PyProfile { inner })
    }

    fn __repr__(&self) -> String {
        format!(
            "Profile(g={}, v0={}, N={}, M={})",
            self.inner.g, self.inner.v0, self.inner.n, self.inner.m
        )
    }
}

#[pyfunction]
#[pyo3(signature = (g, v0, alpha = "unknown", horizon = 10))]
fn classify<'py>(
    py: Python<'py>,
    g: [BigInt; 4],
    v0: (BigInt, BigInt),
    alpha: &str,
    horizon: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let p = PyProfile::new(g, v0, alpha)?;
    to_py(py, &wire::classification_json(&p.inner, horizon))
}

#[pyfunction]
fn hilbert_coefficients(n: BigInt, m: BigInt, horizon: usize) -> Vec<String> {
    hilbert_series(&n, &m)
        .coefficients(horizon)
        .iter()
        .map(|c| c.to_string())
        .collect()
}

#[pyfunction]
#[pyo3(signature = (alpha, beta, gamma, koszul_grade = false))]
fn construct_rm<'py>(
    py: Python<'py>,
    alpha: BigInt,
    beta: BigInt,
    gamma: BigInt,
    koszul_grade: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let rm = construct::rm_pair(&order(alpha, beta, gamma)?, koszul_grade).map_err(construct_err)?;
    to_py(py, &wire::rm_pair_json(&rm))
}

#[pyfunction]
fn ample_sequence<'py>(
    py: Python<'py>,
    alpha: BigInt,
    beta: BigInt,
    gamma: BigInt,
    count: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let theta = order(alpha, beta, gamma)?.theta();
    let items = construct::ample_sequence(&theta, count).map_err(construct_err)?;
    to_py(py, &wire::ample_items_json(&items))
}

#[pyfunction]
fn descent_chain(
    alpha: BigInt,
    beta: BigInt,
    gamma: BigInt,
    v: (BigInt, BigInt),
    steps: usize,
) -> PyResult<Vec<(BigInt, BigInt)>> {
    let theta = order(alpha, beta, gamma)?.theta();
    let chain = twist::descent_chain(&theta, &KVector::new(v.0, v.1), steps).map_err(twist_err)?;
    Ok(chain.into_iter().map(|w| (w.deg, w.rk)).collect())
}

/// Runs an oracle suite; returns (passed, report text).
#[pyfunction]
#[pyo3(signature = (suite = "all", entry_bound = 3, parallel = false))]
fn oracle_run(py: Python<'_>, suite: &str, entry_bound: i64, parallel: bool) -> PyResult<(bool, String)> {
    if entry_bound < 1 {
        return Err(value_err("entry bound must be at least 1"));
    }
    let cfg = SuiteConfig {
        entry_bound,
        vec_bound: entry_bound,
        parallel,
        ..SuiteConfig::default()
    };
    let suite = suite.to_string();
    let report = py
        .detach(move || oracle::run_suite(&suite, &cfg))
        .ok_or_else(|| value_err("unknown suite"))?;
    Ok((report.passed(), report.to_string()))
}

#[pymodule]
fn rmtori_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProfile>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(construct_rm, m)?)?;
    m.add_function(wrap_pyfunction!(ample_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(descent_chain, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_run, m)?)?;
    Ok(())
}
