//! Python bindings. Errors from the library surface as `ValueError`, except
//! numerical non-convergence, which surfaces as `ArithmeticError`.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use ellipsoid_measures::curvature::{curvature_bounds as bounds, kubota_mc as kubota, CurvatureQuery};
use ellipsoid_measures::lauricella::{self, FdParams};
use ellipsoid_measures::projection::{projected_volume as volume, Subspace, SubspaceBasis, VolumeForm};
use ellipsoid_measures::surface::{self, RatioMethod};
use ellipsoid_measures::{ledger, Estimate, MonteCarloConfig, QuadratureConfig};

fn py_err(e: ellipsoid_measures::Error) -> PyErr {
    if e.is_numerical_failure() {
        PyArithmeticError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn method(name: &str, samples: u64, seed: u64, tol: f64) -> PyResult<RatioMethod> {
    match name {
        "integral" | "moment_integral" => Ok(RatioMethod::MomentIntegral(QuadratureConfig::with_rel_tol(tol))),
        "mc" | "gaussian_mc" => Ok(RatioMethod::MonteCarlo(MonteCarloConfig::new(samples, seed))),
        other => Err(PyValueError::new_err(format!("unknown method {other:?}; expected integral or mc"))),
    }
}

fn pair(e: Estimate) -> (f64, f64) {
    (e.value, e.std_error)
}

/// Surface area as `(value, std_error)`.
#[pyfunction]
#[pyo3(signature = (axes, method="integral", samples=100_000, seed=0, tol=1e-10))]
fn surface_area(axes: Vec<f64>, method: &str, samples: u64, seed: u64, tol: f64) -> PyResult<(f64, f64)> {
    let m = self::method(method, samples, seed, tol)?;
    surface::surface_area(&axes, &m).map(pair).map_err(py_err)
}

/// Isoperimetric ratio `R(E)` from inverse semi-axes, as `(value, std_error)`.
#[pyfunction]
#[pyo3(signature = (q, method="integral", samples=100_000, seed=0, tol=1e-10))]
fn ratio(q: Vec<f64>, method: &str, samples: u64, seed: u64, tol: f64) -> PyResult<(f64, f64)> {
    let m = self::method(method, samples, seed, tol)?;
    surface::ratio_norm(&q, &m).map(|r| (r.ratio, r.std_error)).map_err(py_err)
}

/// `(c_n, C_n)`.
#[pyfunction]
fn ratio_bounds(n: usize) -> PyResult<(f64, f64)> {
    surface::ratio_bounds(n).map(|b| (b.lower, b.upper)).map_err(py_err)
}

#[pyfunction]
fn ratio_asymptotic(q: Vec<f64>) -> PyResult<f64> {
    surface::ratio_asymptotic(&q).map(|a| a.value).map_err(py_err)
}

/// Lauricella `F_D(a; b; c; x)`.
#[pyfunction]
#[pyo3(signature = (a, b, c, x, tol=1e-12))]
fn fd(a: f64, b: Vec<f64>, c: f64, x: Vec<f64>, tol: f64) -> PyResult<f64> {
    let p = FdParams::new(a, b, c, x).map_err(py_err)?;
    lauricella::fd(&p, &QuadratureConfig::with_rel_tol(tol)).map_err(py_err)
}

/// Hypergeometric `R(E)` as `{"value", "printed", "oracle", "alpha"}`.
#[pyfunction]
#[pyo3(signature = (q, alpha=None, tol=1e-12))]
fn ratio_fd(q: Vec<f64>, alpha: Option<f64>, tol: f64) -> PyResult<BTreeMap<&'static str, f64>> {
    let alpha = match alpha {
        Some(a) => a,
        None => lauricella::centred_alpha(&q).map_err(py_err)?,
    };
    let r = lauricella::ratio_via_fd(&q, alpha, &QuadratureConfig::with_rel_tol(tol)).map_err(py_err)?;
    Ok(BTreeMap::from([
        ("value", r.corrected.value),
        ("printed", r.printed.value),
        ("oracle", r.oracle),
        ("alpha", r.alpha),
    ]))
}

/// Volume of the projection onto the span of the given rows.
#[pyfunction]
#[pyo3(signature = (axes, basis, form="auto"))]
fn projected_volume(axes: Vec<f64>, basis: Vec<Vec<f64>>, form: &str) -> PyResult<f64> {
    let b = SubspaceBasis::from_vectors(&basis).map_err(py_err)?;
    let sub = Subspace::from(b);
    let f = match form {
        "auto" => VolumeForm::auto(&axes, &sub),
        other => other.parse().map_err(py_err)?,
    };
    volume(&axes, &sub, f).map_err(py_err)
}

/// `k`-th integral mean curvature by Monte Carlo, as `(value, std_error)`.
#[pyfunction]
#[pyo3(signature = (axes, k, samples=100_000, seed=0))]
fn mean_curvature(py: Python<'_>, axes: Vec<f64>, k: usize, samples: u64, seed: u64) -> PyResult<(f64, f64)> {
    let q = CurvatureQuery::from_axes(&axes, k).map_err(py_err)?;
    py.detach(|| kubota(&q, &MonteCarloConfig::new(samples, seed)))
        .map(pair)
        .map_err(py_err)
}

/// `(lower, upper)` bounds on the `k`-th integral mean curvature.
#[pyfunction]
fn curvature_bounds(axes: Vec<f64>, k: usize) -> PyResult<(f64, f64)> {
    let q = CurvatureQuery::from_axes(&axes, k).map_err(py_err)?;
    bounds(&q).map(|b| (b.lower, b.upper)).map_err(py_err)
}

/// The formula audit as a JSON array.
#[pyfunction]
fn formula_ledger_json() -> PyResult<String> {
    let entries = ledger::formula_ledger(&QuadratureConfig::with_rel_tol(1e-12)).map_err(py_err)?;
    serde_json::to_string(&entries).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule(name = "ellipsoid_measures")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(surface_area, m)?)?;
    m.add_function(wrap_pyfunction!(ratio, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(fd, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_fd, m)?)?;
    m.add_function(wrap_pyfunction!(projected_volume, m)?)?;
    m.add_function(wrap_pyfunction!(mean_curvature, m)?)?;
    m.add_function(wrap_pyfunction!(curvature_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(formula_ledger_json, m)?)?;
    Ok(())
}
