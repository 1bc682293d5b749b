//! Python module `picomm_py`.
//!
//! Ratios come back as `fractions.Fraction`, reports as plain dicts with the
//! same fields as the JSON-lines output.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use picomm::catalog::{seed_catalog, CatalogEntry, GroupSpec};
use picomm::harness::{self, PiPolicy, SweepConfig, TheoremId};
use picomm::report_io::report_json_line;
use picomm::structure::{has_normal_hall, o_pi_core};
use picomm::{invariants, ExactRatio, TheoremReport};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

fn err(e: picomm::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction(py: Python<'_>, r: ExactRatio) -> PyResult<Bound<'_, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numerator(), r.denominator()))
}

fn prime_set(primes: Vec<u64>) -> PyResult<picomm::PrimeSet> {
    picomm::PrimeSet::new(primes).map_err(err)
}

fn reports_to_dicts<'py>(
    py: Python<'py>,
    reports: &[TheoremReport],
) -> PyResult<Bound<'py, PyList>> {
    let loads = py.import("json")?.getattr("loads")?;
    let out = PyList::empty(py);
    for r in reports {
        out.append(loads.call1((report_json_line(r),))?)?;
    }
    Ok(out)
}

#[pyclass(name = "Permutation", module = "picomm_py", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPermutation(picomm::Permutation);

#[pymethods]
impl PyPermutation {
    /// From 0-based images: point `i` goes to `images[i]`.
    #[new]
    fn new(images: Vec<u32>) -> PyResult<Self> {
        picomm::Permutation::from_images(images)
            .map(Self)
            .map_err(err)
    }

    /// Parses 1-based cycle notation such as `"(1,2,3)(4,5)"`.
    #[staticmethod]
    fn parse(text: &str, degree: usize) -> PyResult<Self> {
        picomm::Permutation::parse_cycles(text, degree)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn images(&self) -> Vec<u32> {
        self.0.images().to_vec()
    }

    fn order(&self) -> u64 {
        self.0.element_order()
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn commutes_with(&self, other: &PyPermutation) -> bool {
        self.0.commutes_with(&other.0)
    }

    /// `self * other` applies `self` first.
    fn __mul__(&self, other: &PyPermutation) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(err)
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation.parse('{}', {})", self.0, self.0.degree())
    }
}

#[pyclass(name = "PermGroup", module = "picomm_py", frozen)]
struct PyPermGroup {
    id: String,
    group: picomm::PermGroup,
}

impl PyPermGroup {
    fn from_entry(entry: &CatalogEntry) -> PyResult<Self> {
        Ok(Self {
            id: entry.id.clone(),
            group: entry.build().map_err(err)?,
        })
    }
}

#[pymethods]
impl PyPermGroup {
    #[new]
    #[pyo3(signature = (generators, id = "custom".to_string()))]
    fn new(generators: Vec<PyPermutation>, id: String) -> PyResult<Self> {
        let gens: Vec<picomm::Permutation> = generators.into_iter().map(|p| p.0).collect();
        let group = picomm::PermGroup::from_generators(&gens).map_err(err)?;
        Ok(Self { id, group })
    }

    /// Builds a group from a selector such as `sym:4`, `psl2:7` or `prod:sym:3*cyc:2`.
    #[staticmethod]
    fn from_selector(selector: &str) -> PyResult<Self> {
        let spec: GroupSpec = selector.parse().map_err(err)?;
        Self::from_entry(&spec.entry().map_err(err)?)
    }

    #[getter]
    fn id(&self) -> &str {
        &self.id
    }

    #[getter]
    fn degree(&self) -> usize {
        self.group.degree()
    }

    fn order(&self) -> u64 {
        self.group.order()
    }

    fn generators(&self) -> Vec<PyPermutation> {
        self.group
            .generators()
            .iter()
            .cloned()
            .map(PyPermutation)
            .collect()
    }

    fn is_abelian(&self) -> bool {
        self.group.is_abelian()
    }

    fn contains(&self, x: &PyPermutation) -> PyResult<bool> {
        self.group.contains(&x.0).map_err(err)
    }

    fn class_sizes(&self) -> PyResult<Vec<u64>> {
        Ok(self.group.conjugacy_classes().map_err(err)?.sizes())
    }

    fn __len__(&self) -> usize {
        self.group.order() as usize
    }

    fn __repr__(&self) -> String {
        format!("<PermGroup {} of order {}>", self.id, self.group.order())
    }
}

#[pyfunction]
fn commuting_probability<'py>(py: Python<'py>, g: &PyPermGroup) -> PyResult<Bound<'py, PyAny>> {
    fraction(
        py,
        invariants::commuting_probability(&g.group).map_err(err)?,
    )
}

#[pyfunction]
fn pr_pi<'py>(py: Python<'py>, g: &PyPermGroup, primes: Vec<u64>) -> PyResult<Bound<'py, PyAny>> {
    fraction(
        py,
        invariants::pr_pi(&g.group, &prime_set(primes)?).map_err(err)?,
    )
}

/// Same value as `pr_pi`, by scanning all pairs.
#[pyfunction]
fn pr_pi_naive<'py>(
    py: Python<'py>,
    g: &PyPermGroup,
    primes: Vec<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    fraction(
        py,
        invariants::pr_pi_naive(&g.group, &prime_set(primes)?).map_err(err)?,
    )
}

#[pyfunction]
fn d_pi<'py>(py: Python<'py>, g: &PyPermGroup, primes: Vec<u64>) -> PyResult<Bound<'py, PyAny>> {
    fraction(
        py,
        invariants::d_pi(&g.group, &prime_set(primes)?).map_err(err)?,
    )
}

#[pyfunction]
fn pi_element_count(g: &PyPermGroup, primes: Vec<u64>) -> PyResult<usize> {
    Ok(invariants::pi_elements(&g.group, &prime_set(primes)?)
        .map_err(err)?
        .count())
}

#[pyfunction]
fn centralizer_pi_fraction<'py>(
    py: Python<'py>,
    g: &PyPermGroup,
    x: &PyPermutation,
    primes: Vec<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = invariants::centralizer_pi_fraction(&g.group, &x.0, &prime_set(primes)?);
    fraction(py, r.map_err(err)?)
}

#[pyfunction]
fn threshold(py: Python<'_>, p: u64) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, invariants::threshold(p).map_err(err)?)
}

#[pyfunction]
fn pi_core_order(g: &PyPermGroup, primes: Vec<u64>) -> PyResult<u64> {
    Ok(o_pi_core(&g.group, &prime_set(primes)?)
        .map_err(err)?
        .order())
}

#[pyfunction]
fn normal_hall(g: &PyPermGroup, primes: Vec<u64>) -> PyResult<bool> {
    has_normal_hall(&g.group, &prime_set(primes)?).map_err(err)
}

/// Runs the named verifiers (`"A"`, `"C"`, `"all"`, ...) on one group.
#[pyfunction]
#[pyo3(signature = (g, theorems, primes))]
fn verify<'py>(
    py: Python<'py>,
    g: &PyPermGroup,
    theorems: &str,
    primes: Vec<u64>,
) -> PyResult<Bound<'py, PyList>> {
    let ids = TheoremId::parse_list(theorems).map_err(err)?;
    let pi = prime_set(primes)?;
    let mut generators: Vec<String> = g.group.generators().iter().map(|p| p.to_string()).collect();
    if generators.is_empty() {
        generators.push("()".into());
    }
    let entry = CatalogEntry {
        id: g.id.clone(),
        degree: g.group.degree(),
        generators,
        provenance: picomm::catalog::Provenance::File {
            path: "<python>".into(),
            line: 0,
        },
        expected_order: Some(g.group.order()),
    };
    let config = SweepConfig {
        theorems: ids,
        pi_policy: PiPolicy::Explicit(vec![pi]),
        ..Default::default()
    };
    let out = py
        .detach(|| harness::sweep(std::slice::from_ref(&entry), &config))
        .map_err(err)?;
    reports_to_dicts(py, &out.reports)
}

/// Sweeps the built-in catalog.
#[pyfunction]
#[pyo3(signature = (theorems = "all", max_order = None, max_primes = 3))]
fn sweep<'py>(
    py: Python<'py>,
    theorems: &str,
    max_order: Option<u64>,
    max_primes: usize,
) -> PyResult<Bound<'py, PyList>> {
    let config = SweepConfig {
        theorems: TheoremId::parse_list(theorems).map_err(err)?,
        pi_policy: PiPolicy::Subsets { max_primes },
        max_order,
        ..Default::default()
    };
    let catalog = seed_catalog();
    let out = py
        .detach(|| harness::sweep(&catalog, &config))
        .map_err(err)?;
    reports_to_dicts(py, &out.reports)
}

/// Ids of the built-in catalog.
#[pyfunction]
fn catalog_ids() -> Vec<String> {
    seed_catalog().into_iter().map(|e| e.id).collect()
}

#[pymodule]
fn picomm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyPermGroup>()?;
    m.add_function(wrap_pyfunction!(commuting_probability, m)?)?;
    m.add_function(wrap_pyfunction!(pr_pi, m)?)?;
    m.add_function(wrap_pyfunction!(pr_pi_naive, m)?)?;
    m.add_function(wrap_pyfunction!(d_pi, m)?)?;
    m.add_function(wrap_pyfunction!(pi_element_count, m)?)?;
    m.add_function(wrap_pyfunction!(centralizer_pi_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(threshold, m)?)?;
    m.add_function(wrap_pyfunction!(pi_core_order, m)?)?;
    m.add_function(wrap_pyfunction!(normal_hall, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_ids, m)?)?;
    Ok(())
}
