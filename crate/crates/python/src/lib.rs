use std::collections::BTreeMap;
use std::time::Duration;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use genus_core::engine::{compute_genus, EngineConfig, EngineError};
use genus_core::oracle::{brute_force_genus, DEFAULT_ORACLE_CAP};
use genus_core::search::SearchConfig;
use genus_core::{
    count_cycles_up_to, deserialize_certificate, serialize_certificate, verify_certificate, Budget,
};

create_exception!(genus, BudgetExceededError, PyException);
create_exception!(genus, GenusError, PyException);

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A connected multigraph on vertices `0..n`.
#[pyclass(frozen, name = "Graph", module = "genus")]
struct PyGraph {
    inner: genus_core::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = genus_core::Graph::new(n, edges).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    /// Builds a named family, e.g. `complete:7` or `circulant:20:1,3,5`.
    #[staticmethod]
    fn generate(spec: &str) -> PyResult<Self> {
        let inner = genus_core::generate(spec).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        let inner = genus_core::parse_graph6(text).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        let inner = genus_core::parse_edge_list(text).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.n() {
            return Err(value_error(format!("vertex {v} out of range")));
        }
        Ok(self.inner.degree(v))
    }

    fn girth(&self) -> Option<usize> {
        self.inner.girth()
    }

    fn to_graph6(&self) -> PyResult<String> {
        genus_core::encode_graph6(&self.inner).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Result of an exact genus computation.
#[pyclass(frozen, name = "Embedding", module = "genus")]
struct PyEmbedding {
    #[pyo3(get)]
    genus: usize,
    #[pyo3(get)]
    faces: Vec<Vec<usize>>,
    #[pyo3(get)]
    certificate: String,
    #[pyo3(get)]
    nodes: u64,
}

#[pymethods]
impl PyEmbedding {
    fn __repr__(&self) -> String {
        format!("Embedding(genus={}, faces={})", self.genus, self.faces.len())
    }
}

/// Exact genus with a certificate. Raises `BudgetExceededError` carrying
/// `(lower, upper)` when a limit is hit first.
#[pyfunction]
#[pyo3(name = "genus", signature = (graph, max_seconds=None, max_nodes=None, threads=1))]
fn py_genus(
    py: Python<'_>,
    graph: &PyGraph,
    max_seconds: Option<f64>,
    max_nodes: Option<u64>,
    threads: usize,
) -> PyResult<PyEmbedding> {
    let config = EngineConfig {
        search: SearchConfig {
            threads: threads.max(1),
            ..SearchConfig::default()
        },
        budget: Budget {
            max_nodes,
            max_time: max_seconds.map(Duration::from_secs_f64),
        },
        ..EngineConfig::default()
    };
    let g = &graph.inner;
    let result = py.detach(|| compute_genus(g, &config));
    match result {
        Ok(report) => Ok(PyEmbedding {
            genus: report.genus,
            faces: report
                .certificate
                .faces
                .iter()
                .map(|f| f.vertices.clone())
                .collect(),
            certificate: serialize_certificate(&report.certificate),
            nodes: report.nodes,
        }),
        Err(EngineError::BudgetExceeded { lower, upper }) => {
            Err(BudgetExceededError::new_err((lower, upper)))
        }
        Err(e) => Err(GenusError::new_err(e.to_string())),
    }
}

/// Brute-force genus over all rotation systems.
#[pyfunction]
#[pyo3(signature = (graph, cap=DEFAULT_ORACLE_CAP))]
fn oracle_genus(py: Python<'_>, graph: &PyGraph, cap: u128) -> PyResult<usize> {
    let g = &graph.inner;
    py.detach(|| brute_force_genus(g, cap))
        .map(|(genus, _)| genus)
        .map_err(value_error)
}

/// Violation messages for a certificate; empty when it is valid.
#[pyfunction]
fn verify(graph: &PyGraph, certificate: &str) -> PyResult<Vec<String>> {
    let cert = deserialize_certificate(certificate).map_err(value_error)?;
    let report = verify_certificate(&graph.inner, &cert).map_err(value_error)?;
    Ok(report.violations.iter().map(ToString::to_string).collect())
}

/// Initial `(lower, upper)` genus bracket.
#[pyfunction]
fn initial_bounds(graph: &PyGraph) -> (usize, usize) {
    genus_core::initial_bounds(&graph.inner)
}

/// Best genus among `tries` random rotation systems.
#[pyfunction]
#[pyo3(signature = (graph, tries=100, seed=0))]
fn heuristic_upper_bound(graph: &PyGraph, tries: usize, seed: u64) -> Option<usize> {
    genus_core::heuristic_upper_bound(&graph.inner, tries, seed).map(|(g, _)| g)
}

/// Number of simple cycles of each length up to `max_length`.
#[pyfunction]
#[pyo3(signature = (graph, max_length=None))]
fn count_cycles(graph: &PyGraph, max_length: Option<usize>) -> BTreeMap<usize, u64> {
    count_cycles_up_to(&graph.inner, max_length.unwrap_or(graph.inner.n()))
}

#[pymodule]
fn genus(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyEmbedding>()?;
    m.add_function(wrap_pyfunction!(py_genus, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_genus, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(initial_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(heuristic_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(count_cycles, m)?)?;
    m.add("BudgetExceededError", m.py().get_type::<BudgetExceededError>())?;
    m.add("GenusError", m.py().get_type::<GenusError>())?;
    Ok(())
}
