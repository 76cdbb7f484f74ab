//! Python bindings: the main exact-arithmetic types and reduction operations.
//!
//! Exact values cross the boundary as literal strings under the same grammar
//! the CLI uses (`"1/l^2"`, `"-2/l"`, `"1/2+3/4i"`); numeric values are
//! Python complex numbers.

use num_complex::Complex64;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyDict, PyList};

use isored_core::equivalence as eq;
use isored_core::linalg::Mat;
use isored_core::preservation as pres;
use isored_core::ratfield::{parse_gauss, parse_ratfunc};
use isored_core::reduction as red;
use isored_core::spectra;
use isored_core::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::DivisionByZeroFunction => PyZeroDivisionError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn gauss(s: &str) -> PyResult<isored_core::GaussianRational> {
    parse_gauss(s).map_err(py_err)
}

fn gauss_vec(v: &[String]) -> PyResult<Vec<isored_core::GaussianRational>> {
    v.iter().map(|s| gauss(s)).collect()
}

fn literals(v: &[isored_core::GaussianRational]) -> Vec<String> {
    v.iter().map(|x| x.to_literal()).collect()
}

/// Exact complex scalar with rational real and imaginary parts.
#[pyclass(name = "GaussianRational", skip_from_py_object)]
#[derive(Clone)]
struct PyGauss {
    inner: isored_core::GaussianRational,
}

#[pymethods]
impl PyGauss {
    #[new]
    fn new(literal: &str) -> PyResult<Self> {
        Ok(Self { inner: gauss(literal)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_literal()
    }

    fn __repr__(&self) -> String {
        format!("GaussianRational('{}')", self.inner.to_literal())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &Self) -> Self {
        Self { inner: &self.inner + &other.inner }
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self { inner: &self.inner - &other.inner }
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self { inner: &self.inner * &other.inner }
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        let inv = other.inner.inv().map_err(py_err)?;
        Ok(Self { inner: &self.inner * &inv })
    }

    fn __neg__(&self) -> Self {
        Self { inner: -&self.inner }
    }

    fn conj(&self) -> Self {
        Self { inner: self.inner.conj() }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Exact square root in Q(i), if one exists.
    fn sqrt(&self) -> Option<Self> {
        self.inner.sqrt_exact().map(|inner| Self { inner })
    }

    /// Floating-point approximation as a Python complex.
    fn approx<'py>(&self, py: Python<'py>) -> Bound<'py, PyComplex> {
        let z = self.inner.to_c64();
        PyComplex::from_doubles(py, z.re, z.im)
    }
}

/// Rational function in lowest terms with monic denominator.
#[pyclass(name = "RatFunc", skip_from_py_object)]
#[derive(Clone)]
struct PyRatFunc {
    inner: isored_core::RatFunc,
}

#[pymethods]
impl PyRatFunc {
    #[new]
    fn new(literal: &str) -> PyResult<Self> {
        Ok(Self { inner: parse_ratfunc(literal).map_err(py_err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_literal()
    }

    fn __repr__(&self) -> String {
        format!("RatFunc('{}')", self.inner.to_literal())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &Self) -> Self {
        Self { inner: &self.inner + &other.inner }
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self { inner: &self.inner - &other.inner }
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self { inner: &self.inner * &other.inner }
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self { inner: self.inner.checked_div(&other.inner).map_err(py_err)? })
    }

    fn __neg__(&self) -> Self {
        Self { inner: -&self.inner }
    }

    fn num(&self) -> String {
        self.inner.num().to_literal()
    }

    fn den(&self) -> String {
        self.inner.den().to_literal()
    }

    fn is_proper(&self) -> bool {
        self.inner.is_proper()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Exact evaluation; raises at poles.
    fn eval_exact(&self, at: &str) -> PyResult<PyGauss> {
        let z = gauss(at)?;
        Ok(PyGauss { inner: self.inner.eval_exact(&z).map_err(py_err)? })
    }

    /// Numeric evaluation with a near-pole guard.
    #[pyo3(signature = (re, im=0.0, pole_tol=1e-10))]
    fn eval<'py>(
        &self,
        py: Python<'py>,
        re: f64,
        im: f64,
        pole_tol: f64,
    ) -> PyResult<Bound<'py, PyComplex>> {
        let v = self
            .inner
            .eval_numeric(Complex64::new(re, im), pole_tol)
            .map_err(py_err)?;
        Ok(PyComplex::from_doubles(py, v.re, v.im))
    }
}

fn spectrum_to_py<'py>(
    py: Python<'py>,
    sigma: &spectra::SpectrumMultiset,
) -> PyResult<Bound<'py, PyList>> {
    let out = PyList::empty(py);
    for (root, mult) in sigma.entries() {
        let d = PyDict::new(py);
        match root {
            spectra::RootValue::Exact(g) => {
                d.set_item("value", g.to_literal())?;
                let z = g.to_c64();
                d.set_item("approx", PyComplex::from_doubles(py, z.re, z.im))?;
                d.set_item("exact", true)?;
            }
            spectra::RootValue::Approx { value, residual } => {
                d.set_item("approx", PyComplex::from_doubles(py, value.re, value.im))?;
                d.set_item("exact", false)?;
                d.set_item("residual", *residual)?;
            }
        }
        d.set_item("multiplicity", *mult)?;
        out.append(d)?;
    }
    Ok(out)
}

fn verdict_to_py<'py>(
    py: Python<'py>,
    v: &pres::PreservationVerdict,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("preserved", v.preserved)?;
    d.set_item("c", v.c.as_ref().map(|c| c.to_literal()))?;
    d.set_item("degenerate_minus_one", v.degenerate_minus_one)?;
    d.set_item("chain_verified", v.chain_verified)?;
    let rows = PyList::empty(py);
    for w in &v.witness {
        let r = PyDict::new(py);
        r.set_item("vertex", w.index)?;
        r.set_item("lhs", w.lhs.to_literal())?;
        r.set_item("u", w.u_entry.to_literal())?;
        rows.append(r)?;
    }
    d.set_item("rows", rows)?;
    Ok(d)
}

/// Lambda-weighted directed network with 1-based vertex labels.
#[pyclass(name = "Network", skip_from_py_object)]
#[derive(Clone)]
struct PyNetwork {
    inner: isored_core::netgraph::Network,
}

#[pymethods]
impl PyNetwork {
    #[new]
    fn new(n: usize) -> Self {
        Self { inner: isored_core::netgraph::Network::new(n) }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let (net, _) = isored_core::io::parse_network(text).map_err(py_err)?;
        Ok(Self { inner: net })
    }

    fn to_json(&self) -> String {
        isored_core::io::write_network(&self.inner, None)
    }

    fn __repr__(&self) -> String {
        format!("Network(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn add_edge(&mut self, from: usize, to: usize, weight: &str) -> PyResult<()> {
        let w = parse_ratfunc(weight).map_err(py_err)?;
        self.inner.add_edge(from, to, w).map_err(py_err)
    }

    fn edges(&self) -> Vec<(usize, usize, String)> {
        self.inner
            .edges()
            .map(|(i, j, w)| (i, j, w.to_literal()))
            .collect()
    }

    fn weight(&self, from: usize, to: usize) -> String {
        self.inner.weight(from, to).to_literal()
    }

    fn adjacency(&self) -> PyRatMatrix {
        PyRatMatrix { inner: self.inner.adjacency() }
    }

    /// Topological order of the complement when `keep` is structural; raises
    /// otherwise.
    fn validate_structural(&self, keep: Vec<usize>) -> PyResult<Vec<usize>> {
        let ss = self.inner.validate_structural(&keep).map_err(py_err)?;
        Ok(ss.topo().to_vec())
    }

    fn is_lambda0_structural(&self, keep: Vec<usize>, at: &str) -> PyResult<bool> {
        let ss = self.inner.validate_structural(&keep).map_err(py_err)?;
        self.inner
            .is_lambda0_structural(&ss, &gauss(at)?)
            .map_err(py_err)
    }

    /// Isospectral reduction; returns (network, original_labels).
    fn reduce(&self, keep: Vec<usize>) -> PyResult<(Self, Vec<usize>)> {
        let ss = self.inner.validate_structural(&keep).map_err(py_err)?;
        let r = red::reduce_graph(&self.inner, &ss);
        Ok((Self { inner: r.network }, r.original_labels))
    }

    /// Sequential reduction through nested sets in original labels.
    fn reduce_sequence(&self, chain: Vec<Vec<usize>>) -> PyResult<(Self, Vec<usize>)> {
        let r = red::reduce_sequence(&self.inner, &chain).map_err(py_err)?;
        Ok((Self { inner: r.network }, r.original_labels))
    }

    /// Reduction onto an arbitrary set, via single-vertex steps if needed.
    fn reduce_onto(&self, target: Vec<usize>) -> PyResult<(Self, Vec<usize>)> {
        let r = eq::reduce_onto(&self.inner, &target).map_err(py_err)?;
        Ok((Self { inner: r.network }, r.original_labels))
    }

    fn cross_validate(&self, keep: Vec<usize>) -> PyResult<bool> {
        let ss = self.inner.validate_structural(&keep).map_err(py_err)?;
        red::cross_validate(&self.inner, &ss).map_err(py_err)
    }

    fn spectrum<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let sigma = spectra::spectrum(&self.inner.adjacency()).map_err(py_err)?;
        spectrum_to_py(py, &sigma)
    }

    fn eigenvectors_at(&self, at: &str) -> PyResult<Vec<Vec<String>>> {
        let basis =
            spectra::eigenvectors_at(&self.inner.adjacency(), &gauss(at)?).map_err(py_err)?;
        Ok(basis.iter().map(|v| literals(v)).collect())
    }

    /// Chain [u, v2, ..., v_depth] in canonical form; raises when it
    /// terminates before the requested depth.
    fn generalized_chain(&self, at: &str, depth: usize) -> PyResult<Vec<Vec<String>>> {
        let chain = spectra::generalized_chain(&self.inner.adjacency(), &gauss(at)?, depth)
            .map_err(py_err)?;
        Ok(chain.canonicalize().vectors.iter().map(|v| literals(v)).collect())
    }

    /// (algebraic, geometric, defect-or-None) at an eigenvalue.
    fn multiplicities(&self, at: &str) -> PyResult<(usize, usize, Option<usize>)> {
        let rep =
            spectra::multiplicities(&self.inner.adjacency(), &gauss(at)?).map_err(py_err)?;
        Ok((rep.algebraic, rep.geometric, rep.defect))
    }

    /// Entry-wise preservation verdict for the vector u (literals) at lambda0.
    #[pyo3(signature = (keep, at, u, v=None))]
    fn check_preserve<'py>(
        &self,
        py: Python<'py>,
        keep: Vec<usize>,
        at: &str,
        u: Vec<String>,
        v: Option<Vec<String>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let ss = self.inner.validate_structural(&keep).map_err(py_err)?;
        let lambda0 = gauss(at)?;
        let u = gauss_vec(&u)?;
        let v = v.map(|v| gauss_vec(&v)).transpose()?;
        let verdict = pres::check_entrywise(&self.inner, &ss, &lambda0, &u, v.as_deref())
            .map_err(py_err)?;
        verdict_to_py(py, &verdict)
    }

    /// Depth of every vertex relative to the kept set.
    fn depths(&self, keep: Vec<usize>) -> PyResult<std::collections::BTreeMap<usize, usize>> {
        let ss = self.inner.validate_structural(&keep).map_err(py_err)?;
        let d = isored_core::reconstruct::vertex_depths(&self.inner, &ss);
        Ok((1..=self.inner.n()).map(|v| (v, d.depth(v))).collect())
    }

    /// Rebuild a full vector from its restriction to the kept set.
    #[pyo3(signature = (keep, at, vector, prev=None))]
    fn reconstruct(
        &self,
        keep: Vec<usize>,
        at: &str,
        vector: Vec<String>,
        prev: Option<Vec<String>>,
    ) -> PyResult<Vec<String>> {
        let ss = self.inner.validate_structural(&keep).map_err(py_err)?;
        let lambda0 = gauss(at)?;
        let vector = gauss_vec(&vector)?;
        let prev = prev.map(|p| gauss_vec(&p)).transpose()?;
        let full = isored_core::reconstruct::reconstruct_vector(
            &self.inner,
            &ss,
            &lambda0,
            &vector,
            prev.as_deref(),
        )
        .map_err(py_err)?;
        Ok(literals(&full))
    }

    /// Lift a reduced eigenvector back to the full vertex set.
    fn lift(&self, keep: Vec<usize>, at: &str, u_keep: Vec<String>) -> PyResult<Vec<String>> {
        let part = red::Partition::new(self.inner.n(), &keep).map_err(py_err)?;
        let full = pres::lift_eigenvector(
            &gauss_vec(&u_keep)?,
            &self.inner.adjacency(),
            &part,
            &gauss(at)?,
        )
        .map_err(py_err)?;
        Ok(literals(&full))
    }

    /// Weight-preserving vertex bijection onto `other`, or None.
    fn isomorphic(&self, other: &Self) -> Option<Vec<usize>> {
        eq::isomorphic(&self.inner, &other.inner)
    }

    /// True when every edge weight is proper.
    fn in_g_pi(&self) -> bool {
        eq::in_g_pi(&self.inner)
    }
}

/// Square matrix of rational functions.
#[pyclass(name = "RatMatrix", skip_from_py_object)]
#[derive(Clone)]
struct PyRatMatrix {
    inner: Mat<isored_core::RatFunc>,
}

#[pymethods]
impl PyRatMatrix {
    #[new]
    fn new(rows: Vec<Vec<String>>) -> PyResult<Self> {
        let parsed = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_ratfunc(s).map_err(py_err))
                    .collect::<PyResult<Vec<_>>>()
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self { inner: Mat::from_rows(parsed).map_err(py_err)? })
    }

    fn __repr__(&self) -> String {
        format!("RatMatrix({}x{})", self.inner.rows(), self.inner.cols())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.inner
            .to_rows()
            .iter()
            .map(|row| row.iter().map(|f| f.to_literal()).collect())
            .collect()
    }

    fn dim(&self) -> (usize, usize) {
        (self.inner.rows(), self.inner.cols())
    }

    /// det(M(lambda) - lambda I) as a rational function.
    fn char_function(&self) -> PyResult<PyRatFunc> {
        Ok(PyRatFunc { inner: spectra::char_function(&self.inner).map_err(py_err)? })
    }

    fn spectrum<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let sigma = spectra::spectrum(&self.inner).map_err(py_err)?;
        spectrum_to_py(py, &sigma)
    }

    /// Entrywise exact evaluation at a point.
    fn eval_at(&self, at: &str) -> PyResult<Self> {
        let m = spectra::eval_matrix(&self.inner, &gauss(at)?).map_err(py_err)?;
        Ok(Self { inner: isored_core::linalg::lift_constant(&m) })
    }

    /// Block isospectral reduction onto the kept indices.
    fn reduce(&self, keep: Vec<usize>) -> PyResult<Self> {
        let part = red::Partition::new(self.inner.rows(), &keep).map_err(py_err)?;
        Ok(Self { inner: red::reduce_matrix(&self.inner, &part).map_err(py_err)? })
    }

    fn multiplicities(&self, at: &str) -> PyResult<(usize, usize, Option<usize>)> {
        let rep = spectra::multiplicities(&self.inner, &gauss(at)?).map_err(py_err)?;
        Ok((rep.algebraic, rep.geometric, rep.defect))
    }

    fn eigenvectors_at(&self, at: &str) -> PyResult<Vec<Vec<String>>> {
        let basis = spectra::eigenvectors_at(&self.inner, &gauss(at)?).map_err(py_err)?;
        Ok(basis.iter().map(|v| literals(v)).collect())
    }

    fn generalized_chain(&self, at: &str, depth: usize) -> PyResult<Vec<Vec<String>>> {
        let chain =
            spectra::generalized_chain(&self.inner, &gauss(at)?, depth).map_err(py_err)?;
        Ok(chain.canonicalize().vectors.iter().map(|v| literals(v)).collect())
    }
}

/// Search for a generalized spectral-equivalence witness between networks.
///
/// `rule` is `keep:<list>`, `loops`, or `mincover`; returns (m, k, bijection)
/// or None.
#[pyfunction]
#[pyo3(signature = (a, b, rule, max_steps=3, allow_zero=true))]
fn spectrally_equivalent(
    a: &PyNetwork,
    b: &PyNetwork,
    rule: &str,
    max_steps: usize,
    allow_zero: bool,
) -> PyResult<Option<(usize, usize, Vec<usize>)>> {
    let rule = if let Some(list) = rule.strip_prefix("keep:") {
        let vs = list
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PyValueError::new_err("bad keep list"))?;
        eq::ReductionRule::KeepListed(vs)
    } else {
        match rule {
            "loops" => eq::ReductionRule::KeepLoops,
            "mincover" => eq::ReductionRule::MinCycleCover,
            other => return Err(PyValueError::new_err(format!("unknown rule `{other}`"))),
        }
    };
    let witness = eq::spectrally_equivalent(&a.inner, &b.inner, &rule, max_steps, max_steps, allow_zero)
        .map_err(py_err)?;
    Ok(witness.map(|w| (w.m, w.k, w.iso)))
}

/// Exhaustive matrix spectral-equivalence test at the given dimension;
/// returns (equivalent, matched kept-index pair or None).
#[pyfunction]
fn matrix_spectrally_equivalent(
    a: &PyRatMatrix,
    b: &PyRatMatrix,
    dim: usize,
) -> PyResult<(bool, Option<(Vec<usize>, Vec<usize>)>)> {
    let (ok, ev) = eq::matrix_spectrally_equivalent(&a.inner, &b.inner, dim).map_err(py_err)?;
    let matched = ev.matched.map(|(ia, ib, _)| {
        (ev.reductions_a[ia].0.clone(), ev.reductions_b[ib].0.clone())
    });
    Ok((ok, matched))
}

#[pymodule]
fn isored(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGauss>()?;
    m.add_class::<PyRatFunc>()?;
    m.add_class::<PyNetwork>()?;
    m.add_class::<PyRatMatrix>()?;
    m.add_function(wrap_pyfunction!(spectrally_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_spectrally_equivalent, m)?)?;
    Ok(())
}
