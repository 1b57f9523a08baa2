//! Python bindings: eventually periodic sets of naturals, points and clopen
//! sets of Cantor space, cover classification and the scenario runner.
//!
//! Structured inputs (covers, witnesses, scenarios) cross the boundary as
//! JSON text in the scenario format; structured outputs come back as dicts.

use std::path::PathBuf;

use capinf_cli::{Command, RunOptions, Scenario, COMBINATORS};
use capinf_core::{bits, AInfWitness, CoverFamily, Universe};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// An eventually periodic subset of ℕ.
#[pyclass(name = "NatSet", module = "capinf", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyNatSet(capinf_core::NatSet);

#[pymethods]
impl PyNatSet {
    /// `tail:a`, `arith:a,d`, `evens`, `odds`, `full`, `empty`, `finite:a,b,...` or `pre(per)`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        capinf_core::NatSet::parse(text).map(PyNatSet).map_err(value_error)
    }

    #[staticmethod]
    fn from_parts(pre: &str, per: &str) -> PyResult<Self> {
        let (pre, per) = (bits::parse(pre).map_err(value_error)?, bits::parse(per).map_err(value_error)?);
        capinf_core::NatSet::from_parts(pre, per).map(PyNatSet).map_err(value_error)
    }

    fn __contains__(&self, n: u64) -> bool {
        self.0.contains(n)
    }

    fn union(&self, other: &PyNatSet) -> PyNatSet {
        PyNatSet(self.0.union(&other.0))
    }

    fn intersection(&self, other: &PyNatSet) -> PyNatSet {
        PyNatSet(self.0.intersection(&other.0))
    }

    fn difference(&self, other: &PyNatSet) -> PyNatSet {
        PyNatSet(self.0.difference(&other.0))
    }

    fn complement(&self) -> PyNatSet {
        PyNatSet(self.0.complement())
    }

    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    fn is_subset(&self, other: &PyNatSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// The difference with `other` is finite.
    fn almost_subset(&self, other: &PyNatSet) -> bool {
        self.0.almost_subset(&other.0)
    }

    fn least(&self) -> Option<u64> {
        self.0.least()
    }

    fn elements_below(&self, bound: u64) -> Vec<u64> {
        self.0.elements_below(bound)
    }

    #[getter]
    fn preperiod(&self) -> u64 {
        self.0.preperiod()
    }

    #[getter]
    fn period(&self) -> u64 {
        self.0.period()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("NatSet('{}')", self.0)
    }
}

/// An eventually periodic point of Cantor space.
#[pyclass(name = "Point", module = "capinf", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoint(capinf_core::Point);

#[pymethods]
impl PyPoint {
    /// Lasso notation `pre(per)`, e.g. `"01(1)"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        capinf_core::Point::parse(text).map(PyPoint).map_err(value_error)
    }

    fn bit(&self, i: u64) -> u8 {
        self.0.bit(i) as u8
    }

    fn prefix(&self, len: u64) -> String {
        bits::render(&self.0.prefix(len))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Point('{}')", self.0)
    }
}

/// A finite union of cylinders.
#[pyclass(name = "ClopenSet", module = "capinf", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyClopenSet(capinf_core::ClopenSet);

#[pymethods]
impl PyClopenSet {
    /// Union of the cylinders `[w]` over the given 0/1 words.
    #[new]
    fn new(words: Vec<String>) -> PyResult<Self> {
        capinf_core::ClopenSet::parse_words(&words).map(PyClopenSet).map_err(value_error)
    }

    #[staticmethod]
    fn full() -> Self {
        PyClopenSet(capinf_core::ClopenSet::full())
    }

    #[staticmethod]
    fn empty() -> Self {
        PyClopenSet(capinf_core::ClopenSet::empty())
    }

    fn __contains__(&self, x: &PyPoint) -> bool {
        self.0.contains(&x.0)
    }

    fn union(&self, other: &PyClopenSet) -> PyClopenSet {
        PyClopenSet(self.0.union(&other.0))
    }

    fn intersection(&self, other: &PyClopenSet) -> PyClopenSet {
        PyClopenSet(self.0.intersection(&other.0))
    }

    fn complement(&self) -> PyClopenSet {
        PyClopenSet(self.0.complement())
    }

    fn is_subset(&self, other: &PyClopenSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Canonical antichain of cylinder words.
    fn cylinders(&self) -> Vec<String> {
        self.0.cylinders().iter().map(|w| bits::render(w)).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ClopenSet{}", self.0)
    }
}

fn universe(points: Vec<PyRef<'_, PyPoint>>) -> PyResult<Universe> {
    Universe::new(points.iter().map(|p| p.0.clone()).collect()).map_err(value_error)
}

/// Kind report of a cover family (scenario JSON) relative to `points`.
#[pyfunction]
#[pyo3(signature = (cover, points, horizon = 64))]
fn classify<'py>(py: Python<'py>, cover: &str, points: Vec<PyRef<'py, PyPoint>>, horizon: u64) -> PyResult<Bound<'py, PyAny>> {
    let u: CoverFamily = serde_json::from_str(cover).map_err(value_error)?;
    let report = capinf_core::classify(&u, &universe(points)?, horizon).map_err(value_error)?;
    to_py(py, &report)
}

/// Derived family `⟨⋂_{n ∈ A_k} U_n⟩` of a witness, with its kind report.
#[pyfunction]
#[pyo3(signature = (cover, witness, points, horizon = 64))]
fn a_infinity<'py>(
    py: Python<'py>,
    cover: &str,
    witness: &str,
    points: Vec<PyRef<'py, PyPoint>>,
    horizon: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let u: CoverFamily = serde_json::from_str(cover).map_err(value_error)?;
    let w: AInfWitness = serde_json::from_str(witness).map_err(value_error)?;
    let derived = capinf_core::a_infinity(&u, &w, &universe(points)?, horizon).map_err(value_error)?;
    to_py(py, &derived)
}

/// Runs a CLI command on scenario JSON text and returns the sealed report.
#[pyfunction]
#[pyo3(signature = (command, scenario, combinator = None, horizon = None, seed = None))]
fn run_scenario<'py>(
    py: Python<'py>,
    command: &str,
    scenario: &str,
    combinator: Option<String>,
    horizon: Option<u64>,
    seed: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let s = Scenario::parse(scenario).map_err(value_error)?;
    let command = match command {
        "classify" => Command::Classify,
        "ainf" => Command::Ainf,
        "oracle-check" => Command::OracleCheck,
        "select" => {
            let name = combinator
                .or_else(|| s.params.combinator.clone())
                .ok_or_else(|| PyValueError::new_err("select needs a combinator"))?;
            Command::Select(name)
        }
        other => return Err(PyValueError::new_err(format!("unknown command {other:?}"))),
    };
    let body = capinf_cli::run(&command, &s, RunOptions { horizon, seed }).map_err(value_error)?;
    to_py(py, &body.seal(0))
}

/// Same as `run_scenario`, reading the scenario from a file.
#[pyfunction]
#[pyo3(signature = (command, path, combinator = None, horizon = None, seed = None))]
fn run_scenario_file<'py>(
    py: Python<'py>,
    command: &str,
    path: PathBuf,
    combinator: Option<String>,
    horizon: Option<u64>,
    seed: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let text = std::fs::read_to_string(&path).map_err(value_error)?;
    run_scenario(py, command, &text, combinator, horizon, seed)
}

#[pymodule]
fn capinf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNatSet>()?;
    m.add_class::<PyPoint>()?;
    m.add_class::<PyClopenSet>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(a_infinity, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario_file, m)?)?;
    m.add("COMBINATORS", COMBINATORS.to_vec())?;
    Ok(())
}
