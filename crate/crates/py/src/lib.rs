//! Python bindings: semigroups, Boolean certificates, type monoids, the word
//! problem and graph theorems.

use bisem_core::boolean::{check_bis, BooleanInverseSemigroup};
use bisem_core::congruence::{classify, mu};
use bisem_core::constructions;
use bisem_core::graph::{graph_monoid, tight_booleanization, verify_graph_theorem, DirectedGraph};
use bisem_core::io;
use bisem_core::pperm::{generate, symmetric_inverse_semigroup, DEFAULT_ELEMENT_CAP};
use bisem_core::structure::decompose;
use bisem_core::typemonoid::{certify_free, decide_equal, typ, MonoidPresentation, WordBudget, WordVerdict};
use bisem_core::{Error, FiniteGroup, InverseSemigroup, PartialPerm};
use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::TheoremViolation { .. } => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// A finite inverse semigroup with zero at index 0.
#[pyclass(frozen, skip_from_py_object, name = "InverseSemigroup", module = "bisem")]
#[derive(Clone)]
struct PySemigroup(InverseSemigroup);

impl PySemigroup {
    fn check(&self, a: usize) -> PyResult<usize> {
        if a < self.0.size() {
            Ok(a)
        } else {
            Err(PyIndexError::new_err(format!("element {a} out of range")))
        }
    }
}

#[pymethods]
impl PySemigroup {
    #[new]
    #[pyo3(signature = (mul, inv, labels=None))]
    fn new(mul: Vec<Vec<usize>>, inv: Vec<usize>, labels: Option<Vec<String>>) -> PyResult<Self> {
        let flat = mul.concat();
        InverseSemigroup::from_table(flat, inv, labels)
            .map(PySemigroup)
            .map_err(py_err)
    }

    /// Closure of partial permutations given as lists of 0-based `(x, y)` pairs.
    #[staticmethod]
    #[pyo3(signature = (degree, generators, cap=DEFAULT_ELEMENT_CAP))]
    fn from_generators(degree: usize, generators: Vec<Vec<(usize, usize)>>, cap: usize) -> PyResult<Self> {
        let gens = generators
            .iter()
            .map(|pairs| PartialPerm::new(degree, pairs))
            .collect::<Result<Vec<_>, _>>()
            .map_err(py_err)?;
        generate(&gens, cap).map(|(s, _)| PySemigroup(s)).map_err(py_err)
    }

    /// Parses a Cayley-table or generator file.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        io::parse_semigroup(text).map(PySemigroup).map_err(py_err)
    }

    #[staticmethod]
    fn symmetric(n: usize) -> Self {
        PySemigroup(symmetric_inverse_semigroup(n))
    }

    #[staticmethod]
    fn boolean_algebra(k: usize) -> Self {
        PySemigroup(constructions::boolean_algebra(k))
    }

    /// `Z_n` with a zero adjoined.
    #[staticmethod]
    fn cyclic_with_zero(n: usize) -> Self {
        PySemigroup(constructions::group_with_zero(&FiniteGroup::cyclic(n)))
    }

    #[staticmethod]
    fn non_join_example() -> Self {
        PySemigroup(constructions::example_non_join())
    }

    fn direct_sum(&self, other: &PySemigroup) -> Self {
        PySemigroup(constructions::direct_sum(&[&self.0, &other.0]))
    }

    fn __len__(&self) -> usize {
        self.0.size()
    }

    fn __repr__(&self) -> String {
        format!("InverseSemigroup(size={})", self.0.size())
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        Ok(self.0.mul(self.check(a)?, self.check(b)?))
    }

    fn inv(&self, a: usize) -> PyResult<usize> {
        Ok(self.0.inv(self.check(a)?))
    }

    fn label(&self, a: usize) -> PyResult<String> {
        Ok(self.0.label(self.check(a)?).to_string())
    }

    fn labels(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    fn index(&self, label: &str) -> Option<usize> {
        self.0.find_label(label)
    }

    fn idempotents(&self) -> Vec<usize> {
        self.0.idempotents()
    }

    fn leq(&self, a: usize, b: usize) -> PyResult<bool> {
        Ok(self.0.leq(self.check(a)?, self.check(b)?))
    }

    fn compatible(&self, a: usize, b: usize) -> PyResult<bool> {
        Ok(self.0.compatible(self.check(a)?, self.check(b)?))
    }

    fn orthogonal(&self, a: usize, b: usize) -> PyResult<bool> {
        Ok(self.0.orthogonal(self.check(a)?, self.check(b)?))
    }

    /// Axiom violations as strings; empty when valid.
    fn verify(&self) -> Vec<String> {
        self.0.verify().violations.iter().map(ToString::to_string).collect()
    }

    /// Classes of the μ-congruence with more than one element.
    fn mu_classes(&self) -> PyResult<Vec<Vec<usize>>> {
        let m = mu(&self.0).map_err(py_err)?;
        Ok(m.classes().iter().filter(|c| c.len() > 1).cloned().collect())
    }

    /// Certifies the Boolean axioms; raises `ValueError` with the failing
    /// axiom otherwise.
    fn boolean(&self) -> PyResult<PyBoolean> {
        check_bis(&self.0)
            .map(PyBoolean)
            .map_err(|f| PyValueError::new_err(f.to_string()))
    }

    fn to_cayley(&self) -> String {
        io::write_cayley(&self.0)
    }
}

/// A certified Boolean inverse semigroup.
#[pyclass(frozen, name = "BooleanInverseSemigroup", module = "bisem")]
struct PyBoolean(BooleanInverseSemigroup);

#[pymethods]
impl PyBoolean {
    fn __len__(&self) -> usize {
        self.0.size()
    }

    fn __repr__(&self) -> String {
        format!("BooleanInverseSemigroup(size={})", self.0.size())
    }

    fn semigroup(&self) -> PySemigroup {
        PySemigroup(self.0.base().clone())
    }

    fn join(&self, a: usize, b: usize) -> PyResult<usize> {
        self.0.join(a, b).map_err(py_err)
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        self.0.meet(a, b)
    }

    fn skew_difference(&self, a: usize, b: usize) -> usize {
        self.0.skew_difference(a, b)
    }

    fn skew_join(&self, a: usize, b: usize) -> PyResult<usize> {
        self.0.skew_join(a, b).map_err(py_err)
    }

    /// `(fundamental, additively_0_simple, simple)`; `simple` is `None`
    /// above the search cap.
    fn classify(&self) -> PyResult<(bool, bool, Option<bool>)> {
        let c = classify(&self.0).map_err(py_err)?;
        Ok((c.fundamental, c.additively_0_simple, c.simple))
    }

    /// Blocks `(n, group)` of the rook matrix decomposition.
    fn decompose(&self) -> PyResult<Vec<(usize, String)>> {
        decompose(&self.0).map(|d| d.signature()).map_err(py_err)
    }

    /// `Typ(S)` as a presentation over the nonzero `Int` classes.
    fn type_monoid(&self) -> PyResult<PyPresentation> {
        typ(&self.0).map(|t| PyPresentation(t.presentation)).map_err(py_err)
    }

    fn to_cayley(&self) -> String {
        io::write_certified(&self.0)
    }
}

/// A finitely presented commutative monoid over ℕ-vectors.
#[pyclass(frozen, name = "MonoidPresentation", module = "bisem")]
struct PyPresentation(MonoidPresentation);

#[pymethods]
impl PyPresentation {
    #[new]
    fn new(labels: Vec<String>, relations: Vec<(Vec<u32>, Vec<u32>)>) -> PyResult<Self> {
        MonoidPresentation::new(labels, relations)
            .map(PyPresentation)
            .map_err(py_err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        io::parse_presentation(text).map(PyPresentation).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        self.0.to_string()
    }

    fn labels(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    fn relations(&self) -> Vec<(Vec<u32>, Vec<u32>)> {
        self.0.relations().to_vec()
    }

    /// Rank when the monoid is certified free, else `None`.
    fn free_rank(&self) -> Option<usize> {
        certify_free(&self.0).map(|c| c.rank())
    }

    /// `("equal", steps)`, `("distinct", class size)` or `("unknown", explored)`.
    #[pyo3(signature = (u, v, max_vectors=100_000, max_component=64))]
    fn decide_equal(
        &self,
        u: Vec<u32>,
        v: Vec<u32>,
        max_vectors: usize,
        max_component: u32,
    ) -> PyResult<(&'static str, usize)> {
        let budget = WordBudget {
            max_vectors,
            max_component,
        };
        Ok(match decide_equal(&self.0, &u, &v, budget).map_err(py_err)? {
            WordVerdict::Equal { trace } => ("equal", trace.len()),
            WordVerdict::Distinct { class } => ("distinct", class.len()),
            WordVerdict::Unknown { explored } => ("unknown", explored),
        })
    }
}

/// A finite directed graph; edges run from source to range.
#[pyclass(frozen, name = "DirectedGraph", module = "bisem")]
struct PyGraph(DirectedGraph);

#[pymethods]
impl PyGraph {
    /// Edges as `(name, source, range)`.
    #[new]
    #[pyo3(signature = (vertices, edges=Vec::new()))]
    fn new(vertices: Vec<String>, edges: Vec<(String, String, String)>) -> PyResult<Self> {
        let v: Vec<&str> = vertices.iter().map(String::as_str).collect();
        let e: Vec<(&str, &str, &str)> = edges
            .iter()
            .map(|(n, s, r)| (n.as_str(), s.as_str(), r.as_str()))
            .collect();
        DirectedGraph::from_parts(&v, &e).map(PyGraph).map_err(py_err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        io::parse_graph(text).map(PyGraph).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "DirectedGraph(vertices={}, edges={})",
            self.0.num_vertices(),
            self.0.num_edges()
        )
    }

    fn sinks(&self) -> Vec<String> {
        self.0.sinks().iter().map(|&v| self.0.vertices()[v].clone()).collect()
    }

    fn is_acyclic(&self) -> bool {
        self.0.is_acyclic()
    }

    fn graph_monoid(&self) -> PyResult<PyPresentation> {
        graph_monoid(&self.0)
            .map(|g| PyPresentation(g.presentation))
            .map_err(py_err)
    }

    fn tight_booleanization(&self) -> PyResult<PyBoolean> {
        tight_booleanization(&self.0)
            .map(|t| PyBoolean(t.bis().clone()))
            .map_err(py_err)
    }

    /// The theorem summary line; raises when a check fails.
    fn verify_theorem(&self) -> PyResult<String> {
        verify_graph_theorem(&self.0, WordBudget::default())
            .map(|r| r.to_string())
            .map_err(py_err)
    }
}

#[pymodule]
fn bisem(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySemigroup>()?;
    m.add_class::<PyBoolean>()?;
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyGraph>()?;
    Ok(())
}
