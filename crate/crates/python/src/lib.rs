//! Python module `edgebetti`: graphs, Betti tables, extremal Betti numbers,
//! bouquet certificates and the verification reports.
//!
//! Certificates and reports are returned as JSON strings.

use std::str::FromStr;

use edgebetti::{families, verify, FieldSpec, SweepOptions, TableFormat};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: edgebetti::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(name: &str) -> PyResult<FieldSpec> {
    FieldSpec::from_str(name).map_err(err)
}

/// Finite simple graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "edgebetti", eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGraph {
    inner: edgebetti::Graph,
}

impl From<edgebetti::Graph> for PyGraph {
    fn from(inner: edgebetti::Graph) -> Self {
        PyGraph { inner }
    }
}

fn wrap(g: edgebetti::Result<edgebetti::Graph>) -> PyResult<PyGraph> {
    g.map(PyGraph::from).map_err(err)
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges, labels = None))]
    fn new(n: usize, edges: Vec<(usize, usize)>, labels: Option<Vec<String>>) -> PyResult<Self> {
        let g = edgebetti::Graph::new(n, edges).map_err(err)?;
        match labels {
            Some(l) => wrap(g.with_labels(l)),
            None => Ok(g.into()),
        }
    }

    /// Text (`n m` then edge lines) or JSON input.
    #[staticmethod]
    fn parse(input: &str) -> PyResult<Self> {
        wrap(edgebetti::Graph::parse(input))
    }

    /// Inline family spec such as `"grb:5,3"` or `"path-star:2"`.
    #[staticmethod]
    fn family(spec: &str) -> PyResult<Self> {
        wrap(families::parse_family_spec(spec))
    }

    #[staticmethod]
    fn path(n: usize) -> PyResult<Self> {
        wrap(edgebetti::Graph::path(n))
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        wrap(edgebetti::Graph::cycle(n))
    }

    #[staticmethod]
    fn complete(n: usize) -> PyResult<Self> {
        wrap(edgebetti::Graph::complete(n))
    }

    #[staticmethod]
    fn path_star(r: usize) -> PyResult<Self> {
        wrap(families::path_star(r))
    }

    #[staticmethod]
    fn star_triangle(r: usize) -> PyResult<Self> {
        wrap(families::star_triangle(r))
    }

    #[staticmethod]
    fn g_rb(r: usize, b: usize) -> PyResult<Self> {
        wrap(families::g_rb(r, b))
    }

    #[staticmethod]
    fn g_pr1(p: usize, r: usize) -> PyResult<Self> {
        wrap(families::g_pr1(p, r))
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn labels(&self) -> Option<Vec<String>> {
        self.inner.labels().map(<[String]>::to_vec)
    }

    fn label(&self, v: usize) -> String {
        self.inner.label(v)
    }

    fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.inner.vertex_by_label(label)
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.vertex_count() && v < self.inner.vertex_count() && self.inner.has_edge(u, v)
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.check(v)?;
        Ok(self.inner.degree(v))
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check(v)?;
        Ok(self.inner.neighbors(v).iter().collect())
    }

    /// Induced subgraph on `vertices`, relabeled `0..k` in increasing order.
    fn induced_subgraph(&self, vertices: Vec<usize>) -> PyResult<Self> {
        for &v in &vertices {
            self.check(v)?;
        }
        let w = vertices.into_iter().collect();
        self.inner.induced_subgraph(w).map(|(h, _)| h.into()).map_err(err)
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_tree(&self) -> bool {
        self.inner.is_tree()
    }

    fn is_chordal(&self) -> bool {
        self.inner.is_chordal()
    }

    fn perfect_elimination_ordering(&self) -> Option<Vec<usize>> {
        self.inner.perfect_elimination_ordering()
    }

    fn is_induced_matching(&self, edges: Vec<(usize, usize)>) -> PyResult<bool> {
        self.inner.is_induced_matching(&edgebetti::Matching::new(edges)).map_err(err)
    }

    fn induced_matching_number(&self) -> usize {
        self.inner.induced_matching_number()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

impl PyGraph {
    fn check(&self, v: usize) -> PyResult<()> {
        if v < self.inner.vertex_count() {
            Ok(())
        } else {
            Err(err(edgebetti::Error::VertexOutOfRange { vertex: v, n: self.inner.vertex_count() }))
        }
    }
}

/// Sparse graded Betti table; `get(i, j)` is `β_{i,i+j}`.
#[pyclass(name = "BettiTable", module = "edgebetti", eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyBettiTable {
    inner: edgebetti::BettiTable,
}

#[pymethods]
impl PyBettiTable {
    #[staticmethod]
    fn from_json(input: &str) -> PyResult<Self> {
        edgebetti::BettiTable::from_json(input).map(|inner| PyBettiTable { inner }).map_err(err)
    }

    #[getter]
    fn variables(&self) -> usize {
        self.inner.variables()
    }

    fn get(&self, i: usize, j: usize) -> u64 {
        self.inner.get(i, j)
    }

    /// Nonzero `(i, j, value)` triples.
    fn entries(&self) -> Vec<(usize, usize, u64)> {
        self.inner.entries().collect()
    }

    fn regularity(&self) -> usize {
        edgebetti::regularity(&self.inner)
    }

    fn projective_dimension(&self) -> usize {
        edgebetti::projective_dimension(&self.inner)
    }

    /// Extremal Betti numbers as `(i, j, value)`, by increasing `i`.
    fn extremal(&self) -> Vec<(usize, usize, u64)> {
        edgebetti::extremal_positions(&self.inner).positions.iter().map(|e| (e.i, e.j, e.value)).collect()
    }

    fn has_unique_extremal(&self) -> bool {
        edgebetti::has_unique_extremal(&self.inner).0
    }

    /// Coefficients of `Σ (-1)^i β_{i,i+j} t^{i+j}`.
    fn alternating_sum(&self) -> Vec<i128> {
        self.inner.alternating_sum()
    }

    #[pyo3(signature = (format = "grid"))]
    fn render(&self, format: &str) -> PyResult<String> {
        Ok(self.inner.render(TableFormat::from_str(format).map_err(err)?))
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __str__(&self) -> String {
        self.inner.render_grid()
    }

    fn __repr__(&self) -> String {
        format!("BettiTable(n={}, nonzero={})", self.inner.variables(), self.inner.len())
    }
}

#[pyfunction]
#[pyo3(signature = (g, field = "rational", jobs = 0))]
fn betti_table(py: Python<'_>, g: &PyGraph, field: &str, jobs: usize) -> PyResult<PyBettiTable> {
    let opts = SweepOptions::new(self::field(field)?).with_jobs(jobs);
    let graph = g.inner.clone();
    py.detach(|| edgebetti::homology::betti_table_with(&graph, opts))
        .map(|inner| PyBettiTable { inner })
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (g, i, j, field = "rational"))]
fn betti_single(g: &PyGraph, i: usize, j: usize, field: &str) -> PyResult<u64> {
    edgebetti::betti_single(&g.inner, i, j, self::field(field)?).map_err(err)
}

#[pyfunction]
fn hilbert_numerator(g: &PyGraph) -> PyResult<Vec<i128>> {
    edgebetti::hilbert_numerator(&g.inner).map_err(err)
}

/// JSON certificate of type `(i, j)`, or `None`.
#[pyfunction]
fn find_certificate(g: &PyGraph, i: usize, j: usize) -> Option<String> {
    edgebetti::find_certificate(&g.inner, i, j).map(|c| c.to_json())
}

#[pyfunction]
fn validate_certificate(g: &PyGraph, json: &str) -> PyResult<(usize, usize)> {
    edgebetti::Certificate::from_json(&g.inner, json).map(|c| c.kind).map_err(err)
}

#[pyfunction]
fn certified_positions(g: &PyGraph) -> PyResult<Vec<(usize, usize)>> {
    edgebetti::certified_positions(&g.inner).map(|s| s.into_iter().collect()).map_err(err)
}

fn report(r: edgebetti::Result<edgebetti::VerificationReport>) -> PyResult<String> {
    r.map(|r| r.to_json_line(false)).map_err(err)
}

#[pyfunction]
fn verify_first_step(r: usize) -> PyResult<String> {
    report(verify::verify_first_step(r))
}

#[pyfunction]
fn verify_theorem(r: usize, b: usize) -> PyResult<String> {
    report(verify::verify_theorem(r, b))
}

#[pyfunction]
fn verify_support(g: &PyGraph) -> PyResult<String> {
    report(verify::verify_support(&g.inner))
}

#[pyfunction]
fn verify_g_pr1(p: usize, r: usize) -> PyResult<String> {
    report(verify::verify_g_pr1(p, r))
}

#[pyfunction]
fn verify_reg_eq_indmatch(g: &PyGraph) -> PyResult<String> {
    report(verify::verify_reg_eq_indmatch(&g.inner))
}

#[pymodule]
#[pyo3(name = "edgebetti")]
fn edgebetti_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyBettiTable>()?;
    m.add_function(wrap_pyfunction!(betti_table, m)?)?;
    m.add_function(wrap_pyfunction!(betti_single, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_numerator, m)?)?;
    m.add_function(wrap_pyfunction!(find_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(validate_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(certified_positions, m)?)?;
    m.add_function(wrap_pyfunction!(verify_first_step, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(verify_support, m)?)?;
    m.add_function(wrap_pyfunction!(verify_g_pr1, m)?)?;
    m.add_function(wrap_pyfunction!(verify_reg_eq_indmatch, m)?)?;
    Ok(())
}
