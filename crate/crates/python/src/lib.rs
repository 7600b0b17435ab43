//! Python bindings. Groups are passed as spec text (`"2:[1,3];3:[2]"`),
//! partitions as lists of ints, exact ratios come back as `fractions.Fraction`.

use betalattice::beta::parse_rational;
use betalattice::density::{ApproxLimits, ApproxResult};
use betalattice::oracle::DEFAULT_CAP;
use betalattice::{
    AbelianGroupSpec, CheckStatus, Error, ExplicitGroup, PGroupType, Rational, VerificationReport,
};
use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList, PyString};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::Parse(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer().clone(), r.denom().clone()))
}

/// Accepts an int, a `Fraction` (anything with numerator/denominator) or text.
fn rational_arg(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(s) = obj.cast::<PyString>() {
        return parse_rational(&s.to_cow()?).map_err(to_py);
    }
    if let Ok(n) = obj.extract::<BigInt>() {
        return Ok(Rational::from_integer(n));
    }
    let num: BigInt = obj.getattr("numerator")?.extract()?;
    let den: BigInt = obj.getattr("denominator")?.extract()?;
    if den == BigInt::from(0) {
        return Err(PyValueError::new_err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn spec(text: &str) -> PyResult<AbelianGroupSpec> {
    text.parse().map_err(to_py)
}

fn p_type(text: &str) -> PyResult<PGroupType> {
    text.parse().map_err(to_py)
}

fn partition(parts: Vec<u32>) -> PyResult<betalattice::Partition> {
    betalattice::Partition::new(parts).map_err(to_py)
}

#[pyclass(name = "Partition", frozen, eq, hash, ord, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PyPartition(betalattice::Partition);

#[pymethods]
impl PyPartition {
    #[new]
    fn new(parts: Vec<u32>) -> PyResult<Self> {
        partition(parts).map(PyPartition)
    }

    #[getter]
    fn parts(&self) -> Vec<u32> {
        self.0.parts().to_vec()
    }

    #[getter]
    fn weight(&self) -> u32 {
        self.0.weight()
    }

    fn conjugate(&self) -> Self {
        PyPartition(self.0.conjugate())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.0.parts())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyfunction]
fn conjugate(parts: Vec<u32>) -> PyResult<Vec<u32>> {
    Ok(partition(parts)?.conjugate().parts().to_vec())
}

/// Partitions of `n`, largest first, optionally only those inside `bound`.
#[pyfunction]
#[pyo3(signature = (n, bound=None))]
fn partitions_of(n: u32, bound: Option<Vec<u32>>) -> PyResult<Vec<PyPartition>> {
    let bound = bound.map(partition).transpose()?;
    Ok(betalattice::partitions_of(n, bound.as_ref())
        .into_iter()
        .map(PyPartition)
        .collect())
}

/// Coefficients of the Gaussian binomial `[n k]_q`, constant term first.
#[pyfunction]
fn gauss_binomial(n: u32, k: u32) -> Vec<BigInt> {
    betalattice::gauss_binomial(n, k).coeffs().to_vec()
}

/// Coefficients (constant term first) of the polynomial in `p` counting
/// subgroups of type `l` in a group of type `d`.
#[pyfunction]
fn count_subgroups_of_type(d: Vec<u32>, l: Vec<u32>) -> PyResult<Vec<BigInt>> {
    let f = betalattice::count_subgroups_of_type(&partition(d)?, &partition(l)?).map_err(to_py)?;
    Ok(f.coeffs().to_vec())
}

#[pyfunction]
fn s_k(group: &str, k: u32) -> PyResult<BigInt> {
    betalattice::s_k(&p_type(group)?, k).map_err(to_py)
}

#[pyfunction]
fn lattice_size(group: &str) -> PyResult<BigInt> {
    Ok(betalattice::lattice_size(&p_type(group)?))
}

/// `{"s": [...], "total": int}` for one p-group.
#[pyfunction]
fn count_report<'py>(py: Python<'py>, group: &str) -> PyResult<Bound<'py, PyDict>> {
    let r = betalattice::count_report(&p_type(group)?);
    let d = PyDict::new(py);
    d.set_item("group", r.group.to_string())?;
    d.set_item("s", r.s)?;
    d.set_item("total", r.total)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (group=""))]
fn beta<'py>(py: Python<'py>, group: &str) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &betalattice::beta(&spec(group)?))
}

#[pyfunction]
#[pyo3(signature = (group=""))]
fn alpha<'py>(py: Python<'py>, group: &str) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &betalattice::alpha(&spec(group)?))
}

fn approx_dict<'py>(py: Python<'py>, r: &ApproxResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("group", r.group.to_string())?;
    d.set_item("achieved", fraction(py, &r.achieved)?)?;
    d.set_item("error", fraction(py, &r.error)?)?;
    d.set_item("primes_used", r.primes_used)?;
    d.set_item("largest_prime", r.largest_prime)?;
    Ok(d)
}

/// A group whose β is within `eps` of `target`. Raises RuntimeError when the
/// limits run out.
#[pyfunction]
#[pyo3(signature = (target, eps, max_primes=10_000, max_prime=10_000_000))]
fn approximate<'py>(
    py: Python<'py>,
    target: &Bound<'py, PyAny>,
    eps: &Bound<'py, PyAny>,
    max_primes: usize,
    max_prime: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let (x, e) = (rational_arg(target)?, rational_arg(eps)?);
    let limits = ApproxLimits {
        max_primes,
        max_prime,
    };
    let r = py
        .detach(|| betalattice::approximate(&x, &e, &limits))
        .map_err(to_py)?;
    approx_dict(py, &r)
}

/// Subgroup counts of `Z_{m_1} × … × Z_{m_r}` keyed by subgroup order.
#[pyfunction]
#[pyo3(signature = (cyclic_orders, cap=DEFAULT_CAP))]
fn counts_by_order(py: Python<'_>, cyclic_orders: Vec<u64>, cap: u64) -> PyResult<Vec<(u64, u64)>> {
    let g = ExplicitGroup::new(cyclic_orders).map_err(to_py)?;
    let counts = py
        .detach(|| betalattice::counts_by_order(&g, cap))
        .map_err(to_py)?;
    Ok(counts.into_iter().collect())
}

fn report_list<'py>(py: Python<'py>, r: &VerificationReport) -> PyResult<Bound<'py, PyList>> {
    let out = PyList::empty(py);
    for c in &r.checks {
        let d = PyDict::new(py);
        d.set_item("name", &c.name)?;
        d.set_item("subject", &c.subject)?;
        let (status, detail) = match &c.status {
            CheckStatus::Pass => ("pass", None),
            CheckStatus::Fail { witness } => ("fail", Some(witness)),
            CheckStatus::Skipped { reason } => ("skipped", Some(reason)),
        };
        d.set_item("status", status)?;
        d.set_item("detail", detail)?;
        out.append(d)?;
    }
    Ok(out)
}

#[pyfunction]
fn verify_theorems<'py>(py: Python<'py>, group: &str) -> PyResult<Bound<'py, PyList>> {
    report_list(py, &betalattice::verify_theorems(&p_type(group)?))
}

#[pyfunction]
#[pyo3(signature = (group, cap=DEFAULT_CAP))]
fn oracle_check<'py>(py: Python<'py>, group: &str, cap: u64) -> PyResult<Bound<'py, PyList>> {
    let t = p_type(group)?;
    let r = py
        .detach(|| betalattice::oracle_check(&t, cap))
        .map_err(to_py)?;
    report_list(py, &r)
}

#[pymodule]
#[pyo3(name = "betalattice")]
fn betalattice_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_function(wrap_pyfunction!(conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(partitions_of, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(count_subgroups_of_type, m)?)?;
    m.add_function(wrap_pyfunction!(s_k, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_size, m)?)?;
    m.add_function(wrap_pyfunction!(count_report, m)?)?;
    m.add_function(wrap_pyfunction!(beta, m)?)?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(approximate, m)?)?;
    m.add_function(wrap_pyfunction!(counts_by_order, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorems, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_check, m)?)?;
    Ok(())
}
