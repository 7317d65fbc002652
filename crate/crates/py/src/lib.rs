//! Python bindings. Structured results (reports, specs, traces) cross the
//! boundary as plain dicts and lists by way of JSON.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

use unicon4::construct::{self, ConstructError, ConstructionTrace};
use unicon4::io::{format_edge_list, format_graph6, parse_graph6};
use unicon4::transform::{self, OperationSpec, TransformError};
use unicon4::{connectivity, Edge, SearchBudget};

create_exception!(unicon4_py, BudgetExceeded, PyRuntimeError);

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn transform_err(e: TransformError) -> PyErr {
    if e.is_budget_exceeded() {
        BudgetExceeded::new_err(e.to_string())
    } else {
        value_error(e)
    }
}

fn construct_err(e: ConstructError) -> PyErr {
    match e {
        ConstructError::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        ConstructError::Transform(t) => transform_err(t),
        other => value_error(other),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, t: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(t).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn from_py<T: DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(value_error)
}

fn budget(max_paths: Option<usize>, max_len: Option<usize>) -> PyResult<SearchBudget> {
    let d = SearchBudget::default();
    SearchBudget::new(max_paths.unwrap_or(d.max_paths), max_len.or(d.max_len)).map_err(value_error)
}

/// A simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "unicon4_py", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph(unicon4::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        unicon4::Graph::from_edges(n, edges).map(PyGraph).map_err(value_error)
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        parse_graph6(text.trim()).map(PyGraph).map_err(value_error)
    }

    /// `C_n^2`, the square of the `n`-cycle.
    #[staticmethod]
    fn square_of_cycle(n: usize) -> PyResult<Self> {
        unicon4::square_of_cycle(n).map(PyGraph).map_err(value_error)
    }

    fn to_graph6(&self) -> PyResult<String> {
        format_graph6(&self.0).map_err(value_error)
    }

    fn to_edge_list(&self) -> String {
        format_edge_list(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().map(Edge::ends).collect()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.0.n() && v < self.0.n() && self.0.has_edge(u, v)
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.0.check_vertex(v).map_err(value_error)?;
        Ok(self.0.degree(v))
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.0.n(), self.0.edge_count())
    }
}

#[pyfunction]
fn vertex_connectivity(g: &PyGraph) -> PyResult<usize> {
    connectivity::vertex_connectivity(&g.0).map_err(value_error)
}

#[pyfunction]
fn local_connectivity(g: &PyGraph, u: usize, v: usize) -> PyResult<usize> {
    connectivity::local_connectivity(&g.0, u, v).map_err(value_error)
}

/// `(uniform, witness)`; the witness is a cut or a five-path fan as a dict.
#[pyfunction]
fn is_uniformly_4_connected<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<(bool, Bound<'py, PyAny>)> {
    let v = connectivity::is_uniformly_4_connected(&g.0).map_err(value_error)?;
    Ok((v.uniform, to_py(py, &v.witness)?))
}

#[pyfunction]
fn connectivity_report<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &connectivity::connectivity_report(&g.0).map_err(value_error)?)
}

#[pyfunction]
fn removable_edges(g: &PyGraph) -> PyResult<Vec<(usize, usize)>> {
    Ok(transform::removable_edges(&g.0).map_err(transform_err)?.into_iter().map(Edge::ends).collect())
}

#[pyfunction]
fn is_removable(g: &PyGraph, u: usize, v: usize) -> PyResult<bool> {
    transform::is_removable(&g.0, Edge::new(u, v)).map_err(transform_err)
}

/// `(reduced graph, old-to-new id map with None for suppressed vertices)`.
#[pyfunction]
fn reduce_edge(g: &PyGraph, u: usize, v: usize) -> PyResult<(PyGraph, Vec<Option<usize>>)> {
    let r = transform::reduce_edge(&g.0, Edge::new(u, v)).map_err(transform_err)?;
    Ok((PyGraph(r.graph), r.map.0))
}

/// Applies an operation given as a dict such as
/// `{"op": "delta1", "x_set": [0, 1, 3], "y_vertex": 4, "ex_edges": [[0, 1]]}`.
#[pyfunction]
fn apply_operation(g: &PyGraph, spec: &Bound<'_, PyAny>) -> PyResult<PyGraph> {
    let spec: OperationSpec = from_py(spec)?;
    transform::apply_operation(&g.0, &spec).map(PyGraph).map_err(transform_err)
}

#[pyfunction]
#[pyo3(signature = (g, spec, max_paths = None, max_len = None))]
fn is_quasi_4_compatible<'py>(
    py: Python<'py>,
    g: &PyGraph,
    spec: &Bound<'py, PyAny>,
    max_paths: Option<usize>,
    max_len: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let spec: OperationSpec = from_py(spec)?;
    let r = transform::is_quasi_4_compatible(&g.0, &spec, &budget(max_paths, max_len)?).map_err(transform_err)?;
    to_py(py, &r)
}

#[pyfunction]
fn canonical_cert(g: &PyGraph) -> PyResult<String> {
    Ok(unicon4::canonical_cert(&g.0).map_err(value_error)?.as_str().to_string())
}

#[pyfunction]
fn are_isomorphic(g: &PyGraph, h: &PyGraph) -> PyResult<bool> {
    unicon4::are_isomorphic(&g.0, &h.0).map_err(value_error)
}

/// A construction trace as a dict.
#[pyfunction]
#[pyo3(signature = (g, max_paths = None, max_len = None))]
fn decompose<'py>(py: Python<'py>, g: &PyGraph, max_paths: Option<usize>, max_len: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let t = construct::decompose(&g.0, &budget(max_paths, max_len)?).map_err(construct_err)?;
    to_py(py, &t)
}

#[pyfunction]
fn replay(trace: &Bound<'_, PyAny>) -> PyResult<PyGraph> {
    let t: ConstructionTrace = from_py(trace)?;
    construct::replay(&t).map(PyGraph).map_err(construct_err)
}

/// Certificates of every generated graph, keyed by order.
#[pyfunction]
fn generate_all<'py>(py: Python<'py>, n_max: usize) -> PyResult<Bound<'py, PyAny>> {
    let r = construct::generate_all(n_max).map_err(construct_err)?;
    to_py(py, &r.by_order)
}

#[pyfunction]
fn brute_force_uniform(n: usize) -> PyResult<Vec<String>> {
    let certs = construct::brute_force_uniform(n).map_err(construct_err)?;
    Ok(certs.into_iter().map(|c| c.as_str().to_string()).collect())
}

#[pyfunction]
fn verify_theorem<'py>(py: Python<'py>, n_max: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &construct::verify_theorem(n_max).map_err(construct_err)?)
}

#[pymodule]
fn unicon4_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(vertex_connectivity, m)?)?;
    m.add_function(wrap_pyfunction!(local_connectivity, m)?)?;
    m.add_function(wrap_pyfunction!(is_uniformly_4_connected, m)?)?;
    m.add_function(wrap_pyfunction!(connectivity_report, m)?)?;
    m.add_function(wrap_pyfunction!(removable_edges, m)?)?;
    m.add_function(wrap_pyfunction!(is_removable, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_edge, m)?)?;
    m.add_function(wrap_pyfunction!(apply_operation, m)?)?;
    m.add_function(wrap_pyfunction!(is_quasi_4_compatible, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_cert, m)?)?;
    m.add_function(wrap_pyfunction!(are_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(replay, m)?)?;
    m.add_function(wrap_pyfunction!(generate_all, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_uniform, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    Ok(())
}
