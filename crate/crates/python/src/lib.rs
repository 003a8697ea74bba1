//! Python bindings: polynomials, Milnor and Lê numbers, equisingularity
//! verdicts and full reports. Structured results come back as dicts.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use lecycle::cycles::{milnor_number, sigma_dim as core_sigma_dim, Singularity};
use lecycle::equisingularity::{check_with_frame, milnor_equisingular_check, GenericityConfig};
use lecycle::report::AnalysisRequest;
use lecycle::{CoordinateFrame, Engine, LocalDimension};

create_exception!(lecycle_py, LecycleError, PyValueError, "Raised with the error code as the first argument.");

fn err(e: lecycle::Error) -> PyErr {
    LecycleError::new_err((e.code(), e.to_string()))
}

fn json_to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).expect("serializable");
    py.import("json")?.call_method1("loads", (text,))
}

/// A polynomial with rational coefficients in named variables.
#[pyclass(frozen, name = "Polynomial", module = "lecycle_py")]
struct PyPolynomial {
    inner: lecycle::Polynomial,
}

#[pymethods]
impl PyPolynomial {
    /// Parses `text`; `vars` fixes the variable order, otherwise the sorted identifiers are used.
    #[new]
    #[pyo3(signature = (text, vars=None))]
    fn new(text: &str, vars: Option<Vec<String>>) -> PyResult<Self> {
        let inner = lecycle::parse_with_vars(text, vars.as_deref()).map_err(err)?;
        Ok(PyPolynomial { inner })
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.inner.ring().names().to_vec()
    }

    fn total_degree(&self) -> u32 {
        self.inner.total_degree()
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    fn partial(&self, var: &str) -> PyResult<Self> {
        let i = self
            .inner
            .ring()
            .index_of(var)
            .ok_or_else(|| PyValueError::new_err(format!("unknown variable {var:?}")))?;
        Ok(PyPolynomial { inner: self.inner.partial_derivative(i) })
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.same_ring(other)?;
        Ok(PyPolynomial { inner: &self.inner + &other.inner })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.same_ring(other)?;
        Ok(PyPolynomial { inner: &self.inner * &other.inner })
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?}, vars={:?})", self.inner.to_string(), self.vars())
    }
}

impl PyPolynomial {
    fn same_ring(&self, other: &Self) -> PyResult<()> {
        if self.inner.ring() != other.inner.ring() {
            return Err(PyValueError::new_err("polynomials live in different rings"));
        }
        Ok(())
    }
}

fn frame(text: Option<&str>) -> PyResult<Option<CoordinateFrame>> {
    text.map(CoordinateFrame::parse).transpose().map_err(err)
}

/// Milnor number of an isolated singularity at the origin.
#[pyfunction]
fn milnor(f: &PyPolynomial) -> PyResult<u64> {
    milnor_number(&Engine::default(), &f.inner).map_err(err)
}

/// `dim_0 Σf`, or `None` when the origin is not a critical point.
#[pyfunction]
fn sigma_dim(f: &PyPolynomial) -> PyResult<Option<usize>> {
    Ok(match core_sigma_dim(&Engine::default(), &f.inner).map_err(err)? {
        LocalDimension::EmptyAtOrigin => None,
        LocalDimension::Dim(d) => Some(d),
    })
}

/// Invariants of one frame; without `frame`, of the first generic sample.
#[pyfunction]
#[pyo3(signature = (f, frame=None, seed=0))]
fn le_numbers<'py>(py: Python<'py>, f: &PyPolynomial, frame: Option<&str>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let engine = Engine::default();
    let sing = Singularity::new(&engine, &f.inner).map_err(err)?;
    let (frame, record) = match self::frame(frame)? {
        Some(frame) => {
            let record = sing.invariant_record(&engine, &frame).map_err(err)?;
            (frame, record)
        }
        None => {
            let verdict =
                milnor_equisingular_check(&engine, &f.inner, &GenericityConfig::with_seed(seed)).map_err(err)?;
            match verdict.decisive {
                Some(pair) => pair,
                None => {
                    let id = CoordinateFrame::identity(sing.nvars());
                    let record = sing.invariant_record(&engine, &id).map_err(err)?;
                    (id, record)
                }
            }
        }
    };
    let value = serde_json::json!({ "frame": frame.matrix_strings(), "record": record });
    json_to_py(py, &value)
}

/// Milnor equisingularity verdict with its evidence.
#[pyfunction]
#[pyo3(signature = (f, seed=0, frame=None))]
fn check_equisingular<'py>(
    py: Python<'py>,
    f: &PyPolynomial,
    seed: u64,
    frame: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let engine = Engine::default();
    let config = GenericityConfig::with_seed(seed);
    let verdict = match self::frame(frame)? {
        Some(frame) => check_with_frame(&engine, &f.inner, &frame, &config),
        None => milnor_equisingular_check(&engine, &f.inner, &config),
    }
    .map_err(err)?;
    json_to_py(py, &verdict)
}

/// The full report, as produced by `lecycle analyze --json`.
#[pyfunction]
#[pyo3(signature = (text, vars=None, frame=None, seed=0))]
fn analyze<'py>(
    py: Python<'py>,
    text: &str,
    vars: Option<Vec<String>>,
    frame: Option<String>,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let request = AnalysisRequest { vars, frame, seed, ..AnalysisRequest::new(text) };
    let report = py.detach(|| lecycle::report::analyze(&request)).map_err(err)?;
    json_to_py(py, &report)
}

#[pymodule]
fn lecycle_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add("LecycleError", m.py().get_type::<LecycleError>())?;
    m.add_function(wrap_pyfunction!(milnor, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_dim, m)?)?;
    m.add_function(wrap_pyfunction!(le_numbers, m)?)?;
    m.add_function(wrap_pyfunction!(check_equisingular, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    Ok(())
}
