use gnq_core::classify;
use gnq_core::cli::{parse_ring_str, run_command, RingFile};
use gnq_core::ring::catalog::{catalog_get, catalog_names as core_catalog_names};
use gnq_core::ring::group::AbelianGroup;
use gnq_core::ring::{self, FiniteGroup};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Converts anything serializable into plain Python objects.
fn to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn group(factors: &[usize]) -> FiniteGroup {
    if factors.iter().all(|&f| f == 1) {
        FiniteGroup::trivial()
    } else {
        FiniteGroup::abelian(factors)
    }
}

#[pyclass(name = "FusionRing", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFusionRing {
    inner: ring::FusionRing,
}

impl From<ring::FusionRing> for PyFusionRing {
    fn from(inner: ring::FusionRing) -> Self {
        PyFusionRing { inner }
    }
}

#[pymethods]
impl PyFusionRing {
    /// Builds and validates a ring from `N[i][j][k]`.
    #[new]
    #[pyo3(signature = (name, labels, dual, n))]
    fn new(name: String, labels: Vec<String>, dual: Vec<usize>, n: Vec<Vec<Vec<u32>>>) -> PyResult<Self> {
        let file = RingFile {
            name,
            rank: labels.len(),
            labels,
            dual,
            n,
        };
        Self::checked(file, "<python>")
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Self::checked(parse_ring_str(text, "<python>").map_err(value_error)?, "<python>")
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        catalog_get(name).map(Into::into).map_err(value_error)
    }

    #[staticmethod]
    fn group_ring(factors: Vec<usize>) -> Self {
        ring::construct_group_ring(&group(&factors)).into()
    }

    #[staticmethod]
    fn near_group(factors: Vec<usize>, ell: u32) -> Self {
        ring::construct_near_group(&group(&factors), ell).into()
    }

    #[staticmethod]
    fn rmn(m: u32, n: u32) -> Self {
        ring::construct_rmn(m, n).into()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn dual(&self) -> Vec<usize> {
        self.inner.duals().to_vec()
    }

    fn n(&self, i: usize, j: usize, k: usize) -> PyResult<u32> {
        let r = self.inner.rank();
        if i >= r || j >= r || k >= r {
            return Err(value_error(format!("index out of range for rank {r}")));
        }
        Ok(self.inner.n(i, j, k))
    }

    fn tensor(&self) -> Vec<Vec<Vec<u32>>> {
        self.inner.tensor()
    }

    /// Ring with one structure constant replaced; not validated.
    fn with_entry(&self, i: usize, j: usize, k: usize, value: u32) -> PyResult<Self> {
        self.n(i, j, k)?;
        Ok(self.inner.with_entry(i, j, k, value).into())
    }

    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.verify_axioms())
    }

    fn is_valid(&self) -> bool {
        self.inner.verify_axioms().is_pass()
    }

    /// Exact FPdims as strings, or `None` outside quadratic fields.
    fn fpdims(&self) -> Option<Vec<String>> {
        let dims = ring::fpdim_basis(&self.inner);
        dims.exact().ok().map(|e| e.iter().map(ToString::to_string).collect())
    }

    fn fpdims_numeric(&self) -> Vec<f64> {
        ring::fpdim_basis(&self.inner).numeric
    }

    fn invertibles(&self) -> Vec<usize> {
        ring::invertibles(&self.inner).elements.clone()
    }

    fn profile<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &classify::gnq_profile(&self.inner).map_err(value_error)?)
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &classify::classify_ring(&self.inner).map_err(value_error)?)
    }

    /// Basis bijection onto `other`, or `None`.
    fn iso(&self, other: &PyFusionRing) -> Option<Vec<usize>> {
        ring::grothendieck_iso(&self.inner, &other.inner).witness().map(<[usize]>::to_vec)
    }

    fn is_isomorphic(&self, other: &PyFusionRing) -> bool {
        ring::grothendieck_iso(&self.inner, &other.inner).is_isomorphic()
    }

    fn to_json(&self) -> String {
        RingFile::from_ring(&self.inner).to_json()
    }

    fn __mul__(&self, other: &PyFusionRing) -> Self {
        ring::direct_product(&self.inner, &other.inner).into()
    }

    fn __eq__(&self, other: &PyFusionRing) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("FusionRing({:?}, rank={})", self.inner.name(), self.inner.rank())
    }
}

impl PyFusionRing {
    fn checked(file: RingFile, source: &str) -> PyResult<Self> {
        let inner = file.into_ring(source).map_err(value_error)?;
        let report = inner.verify_axioms();
        if let Some(v) = report.violations.first() {
            return Err(value_error(format!("{} axiom violation(s), first: {v}", report.violations.len())));
        }
        Ok(inner.into())
    }
}

#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    core_catalog_names()
}

#[pyfunction]
#[pyo3(signature = (kmax = 8, hmax = 8, gmax = 16))]
fn classify_irrational(py: Python<'_>, kmax: u32, hmax: u32, gmax: u32) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &classify::classify_irrational(kmax, hmax, gmax).map_err(value_error)?)
}

#[pyfunction]
fn tannakian_filter(py: Python<'_>, k: u32, h: u32) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &classify::tannakian_branch_filter(k, h))
}

#[pyfunction]
fn supertannakian_filter(py: Python<'_>, k: u32, h: u32) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &classify::supertannakian_branch_filter(k, h))
}

/// Rings over `Z/n_1 × ...` with the noninvertibles fixed by the subgroup generated by `generators`.
#[pyfunction]
#[pyo3(signature = (factors, generators, r, mult_bound = 2))]
fn enumerate_gnq(factors: Vec<usize>, generators: Vec<Vec<usize>>, r: u32, mult_bound: u32) -> PyResult<Vec<PyFusionRing>> {
    let g = AbelianGroup::new(if factors.is_empty() { vec![1] } else { factors });
    let mut gens = Vec::new();
    for t in &generators {
        if t.len() != g.rank() {
            return Err(value_error(format!("generator {t:?} does not match the group rank {}", g.rank())));
        }
        gens.push(g.from_tuple(t));
    }
    let h = g.subgroup_closure(&gens);
    let rings = classify::enumerate_gnq(&g, &h, classify::DSpec::Multiplicity(r), mult_bound).map_err(value_error)?;
    Ok(rings.into_iter().map(Into::into).collect())
}

/// Runs the command-line tool; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let out = run_command(std::iter::once("gnq".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn gnq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFusionRing>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(classify_irrational, m)?)?;
    m.add_function(wrap_pyfunction!(tannakian_filter, m)?)?;
    m.add_function(wrap_pyfunction!(supertannakian_filter, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_gnq, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
