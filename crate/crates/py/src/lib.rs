use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use twisted_moments::{arithsums, cfrac, estermann, figures, moments, reciprocity, specfun, verify, Sign};

fn py_err(e: twisted_moments::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn sign(s: &str) -> PyResult<Sign> {
    s.parse().map_err(py_err)
}

/// Continued fraction [b0; b1, …, bκ] with its convergents.
#[pyclass(name = "ContinuedFraction", frozen)]
struct PyContinuedFraction {
    inner: cfrac::ContinuedFraction,
}

#[pymethods]
impl PyContinuedFraction {
    #[new]
    fn new(a: i64, q: u64) -> PyResult<Self> {
        Ok(PyContinuedFraction { inner: cfrac::expand(a, q).map_err(py_err)? })
    }

    #[staticmethod]
    fn from_quotients(quotients: Vec<u64>) -> PyResult<Self> {
        Ok(PyContinuedFraction { inner: cfrac::ContinuedFraction::from_quotients(quotients).map_err(py_err)? })
    }

    #[getter]
    fn quotients(&self) -> Vec<u64> {
        self.inner.quotients().to_vec()
    }

    #[getter]
    fn numerators(&self) -> Vec<i64> {
        self.inner.numerators().to_vec()
    }

    #[getter]
    fn denominators(&self) -> Vec<u64> {
        self.inner.denominators().to_vec()
    }

    #[getter]
    fn kappa(&self) -> usize {
        self.inner.kappa()
    }

    fn value(&self) -> (i64, u64) {
        self.inner.value()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ContinuedFraction('{}')", self.inner)
    }
}

/// The Estermann function D(s, α; h/k) at all numerators for one modulus.
#[pyclass(name = "EstermannKernel", frozen)]
struct PyEstermannKernel {
    inner: std::sync::Arc<estermann::EstermannKernel>,
}

#[pymethods]
impl PyEstermannKernel {
    #[new]
    fn new(s: Complex64, alpha: Complex64, k: u64) -> PyResult<Self> {
        Ok(PyEstermannKernel { inner: estermann::kernel(s, alpha, k).map_err(py_err)? })
    }

    fn __call__(&self, h: i64) -> PyResult<Complex64> {
        self.inner.eval(h).map_err(py_err)
    }
}

#[pyfunction]
fn moment_m(a: i64, q: u64) -> PyResult<f64> {
    moments::moment_m(a, q).map_err(py_err)
}

#[pyfunction]
fn moment_mstar(s: Complex64, z: Complex64, a: i64, q: u64) -> PyResult<Complex64> {
    moments::moment_mstar(s, z, a, q).map_err(py_err)
}

#[pyfunction]
fn moment_mstar_j(j: i64, a: i64, q: u64) -> PyResult<f64> {
    moments::moment_mstar_j(j, a, q).map_err(py_err)
}

#[pyfunction]
fn moment_two_twists(parity: &str, h: i64, k: i64, q: u64) -> PyResult<f64> {
    moments::moment_two_twists(sign(parity)?, h, k, q).map_err(py_err)
}

#[pyfunction]
fn estermann_d(s: Complex64, alpha: Complex64, h: i64, k: u64) -> PyResult<Complex64> {
    estermann::estermann_d(s, alpha, h, k).map_err(py_err)
}

#[pyfunction]
fn eta(a: i64, q: u64) -> PyResult<Complex64> {
    estermann::eta_value(a, q).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, a, q, sign_ = "+"))]
fn psi(n: usize, a: i64, q: u64, sign_: &str) -> PyResult<f64> {
    estermann::psi_n(n, a, q, sign(sign_)?).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, a, q, sign_ = "+"))]
fn psi_tilde(n: usize, a: u64, q: u64, sign_: &str) -> PyResult<f64> {
    reciprocity::psi_tilde(a, q, sign(sign_)?, n).map_err(py_err)
}

#[pyfunction]
fn young_error(a: u64, q: u64) -> PyResult<f64> {
    reciprocity::young_error(a, q).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (a, q, sign_ = "+", terms = None))]
fn reciprocal_series(a: u64, q: u64, sign_: &str, terms: Option<usize>) -> PyResult<f64> {
    Ok(reciprocity::mt_series_rhs(a, q, sign(sign_)?, terms).map_err(py_err)?.value)
}

#[pyfunction]
#[pyo3(signature = (a, q, sign_ = "+"))]
fn euclid_chain(a: i64, q: u64, sign_: &str) -> PyResult<f64> {
    cfrac::rhs_ypo(a, q, sign(sign_)?).map_err(py_err)
}

#[pyfunction]
fn f_pm(sign_: &str, a: i64, q: u64) -> PyResult<f64> {
    cfrac::f_pm(sign(sign_)?, a, q).map_err(py_err)
}

/// s(h/k) as a `(numerator, denominator)` pair.
#[pyfunction]
fn dedekind_sum(h: i64, k: u64) -> PyResult<(String, String)> {
    let v = arithsums::dedekind_sum(h, k).map_err(py_err)?;
    Ok((v.numer().to_string(), v.denom().to_string()))
}

#[pyfunction]
fn cotangent_sum(h: i64, k: u64) -> PyResult<f64> {
    arithsums::cotangent_sum(h, k).map_err(py_err)
}

#[pyfunction]
fn hurwitz_zeta(s: Complex64, x: f64) -> PyResult<Complex64> {
    specfun::hurwitz_zeta(s, x).map_err(py_err)
}

#[pyfunction]
fn riemann_zeta(s: Complex64) -> PyResult<Complex64> {
    specfun::riemann_zeta(s).map_err(py_err)
}

#[pyfunction]
fn gamma(s: Complex64) -> PyResult<Complex64> {
    specfun::gamma(s).map_err(py_err)
}

/// Rows `(a, q, M(a, q))` for primes `a < q ≤ qmax`.
#[pyfunction]
fn moment_rows(py: Python<'_>, qmax: u64) -> PyResult<Vec<(u64, u64, f64)>> {
    let rows = py.detach(|| figures::moment_rows(qmax)).map_err(py_err)?;
    Ok(rows.into_iter().map(|r| (r.a, r.q, r.m)).collect())
}

/// Rows `(a, q, N, ψ̃_N(a/q))`, stacked by N.
#[pyfunction]
fn residual_rows(py: Python<'_>, qmax: u64, ns: Vec<usize>) -> PyResult<Vec<(u64, u64, usize, f64)>> {
    let rows = py.detach(|| figures::residual_rows(qmax, &ns, None)).map_err(py_err)?;
    Ok(rows.into_iter().map(|r| (r.a, r.q, r.n, r.psi)).collect())
}

/// Runs a verification suite; returns one dict per check.
#[pyfunction]
#[pyo3(signature = (suite = "all", quick = false, seed = None))]
fn run_verification<'py>(py: Python<'py>, suite: &str, quick: bool, seed: Option<u64>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let mut opts = verify::VerifyOptions { quick, ..Default::default() };
    if let Some(seed) = seed {
        opts.seed = seed;
    }
    let suite = suite.to_string();
    let reports = py.detach(|| verify::run(&suite, &opts)).map_err(py_err)?;
    let mut out = Vec::new();
    for report in reports {
        for check in report.checks {
            let d = PyDict::new(py);
            d.set_item("suite", report.suite.name())?;
            d.set_item("passed", check.passed())?;
            d.set_item("name", &check.name)?;
            d.set_item("value", check.value)?;
            d.set_item("tolerance", check.tolerance)?;
            d.set_item("cases", check.cases)?;
            d.set_item("worst_case", &check.worst_case)?;
            d.set_item("error", &check.error)?;
            out.push(d);
        }
    }
    Ok(out)
}

#[pymodule]
fn _native(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyContinuedFraction>()?;
    m.add_class::<PyEstermannKernel>()?;
    m.add_function(wrap_pyfunction!(moment_m, m)?)?;
    m.add_function(wrap_pyfunction!(moment_mstar, m)?)?;
    m.add_function(wrap_pyfunction!(moment_mstar_j, m)?)?;
    m.add_function(wrap_pyfunction!(moment_two_twists, m)?)?;
    m.add_function(wrap_pyfunction!(estermann_d, m)?)?;
    m.add_function(wrap_pyfunction!(eta, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(psi_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(young_error, m)?)?;
    m.add_function(wrap_pyfunction!(reciprocal_series, m)?)?;
    m.add_function(wrap_pyfunction!(euclid_chain, m)?)?;
    m.add_function(wrap_pyfunction!(f_pm, m)?)?;
    m.add_function(wrap_pyfunction!(dedekind_sum, m)?)?;
    m.add_function(wrap_pyfunction!(cotangent_sum, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(riemann_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(moment_rows, m)?)?;
    m.add_function(wrap_pyfunction!(residual_rows, m)?)?;
    m.add_function(wrap_pyfunction!(run_verification, m)?)?;
    Ok(())
}
