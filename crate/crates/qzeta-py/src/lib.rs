//! Python bindings for qzeta-core: exact q-zeta computation, accelerated
//! series, and telescoping verification, exposed through PyO3.
//!
//! Values cross the boundary as strings (decimal expansion plus the exact
//! numerator/denominator pair) so Python callers keep full precision.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qzeta_core::accel::{
    bbb_rhs, t2_rhs, zeta3_accel, zeta3_amdeberhan, Zeta3Variant,
};
use qzeta_core::qcore::{parse_rational, to_decimal_string};
use qzeta_core::qzeta::{genfunc_lhs_numeric, zeta3_alt_naive, zeta_q_naive};
use qzeta_core::wz::{bbb_pair, telescope_residual, zeta3_pair, Zeta3Init};
use qzeta_core::{QContext, QzError, SumResult};

fn err(e: QzError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Evaluation context: the base q, the digit target, and the term budget.
#[pyclass(name = "QContext")]
#[derive(Clone)]
struct PyQContext {
    inner: QContext,
    digits: u32,
}

#[pymethods]
impl PyQContext {
    #[new]
    #[pyo3(signature = (q, digits=30, max_terms=1_000_000))]
    fn new(q: &str, digits: u32, max_terms: u64) -> PyResult<Self> {
        let q = parse_rational(q).map_err(err)?;
        let inner = QContext::new(q, digits, max_terms).map_err(err)?;
        Ok(Self { inner, digits })
    }

    fn __repr__(&self) -> String {
        format!("QContext(q={}, digits={})", self.inner.q(), self.digits)
    }
}

/// A computed partial sum: decimal value, exact rational, terms used,
/// and the rigorous tail bound.
#[pyclass(name = "SumResult")]
struct PySumResult {
    #[pyo3(get)]
    value: String,
    #[pyo3(get)]
    numerator: String,
    #[pyo3(get)]
    denominator: String,
    #[pyo3(get)]
    terms: u64,
    #[pyo3(get)]
    tail_bound: String,
}

#[pymethods]
impl PySumResult {
    fn __repr__(&self) -> String {
        format!("SumResult(value={}, terms={})", self.value, self.terms)
    }
}

fn wrap(r: SumResult, ctx: &PyQContext) -> PySumResult {
    PySumResult {
        value: to_decimal_string(&r.value, ctx.digits),
        numerator: r.value.numer().to_string(),
        denominator: r.value.denom().to_string(),
        terms: r.terms_used,
        tail_bound: to_decimal_string(&r.tail_bound, ctx.digits),
    }
}

/// The defining series `zeta[s] = sum q^(n(s-1)) / [n]^s`.
#[pyfunction]
fn zeta_q(s: u32, ctx: &PyQContext) -> PyResult<PySumResult> {
    Ok(wrap(zeta_q_naive(s, &ctx.inner).map_err(err)?, ctx))
}

/// The companion value `sum q^n / [n]^3`.
#[pyfunction]
fn zeta3_alt(ctx: &PyQContext) -> PyResult<PySumResult> {
    Ok(wrap(zeta3_alt_naive(&ctx.inner).map_err(err)?, ctx))
}

/// Generating function `sum_k zeta[2k+2] a^(2k)` summed directly.
#[pyfunction]
fn genfunc_lhs(a: &str, ctx: &PyQContext) -> PyResult<PySumResult> {
    let a = parse_rational(a).map_err(err)?;
    Ok(wrap(genfunc_lhs_numeric(&a, &ctx.inner).map_err(err)?, ctx))
}

/// Accelerated series for the generating function (central-binomial form).
#[pyfunction]
fn bbb_t1(a: &str, ctx: &PyQContext) -> PyResult<PySumResult> {
    let a = parse_rational(a).map_err(err)?;
    Ok(wrap(bbb_rhs(&a, &ctx.inner).map_err(err)?, ctx))
}

/// Accelerated series for the generating function (diagonal form).
#[pyfunction]
fn bbb_t2(a: &str, ctx: &PyQContext) -> PyResult<PySumResult> {
    let a = parse_rational(a).map_err(err)?;
    Ok(wrap(t2_rhs(&a, &ctx.inner).map_err(err)?, ctx))
}

/// Alternating accelerated series: variant 1 sums `sum q^(2n)/[n]^3`,
/// variant 2 sums `sum q^n/[n]^3`.
#[pyfunction]
fn zeta3_accelerated(variant: u8, ctx: &PyQContext) -> PyResult<PySumResult> {
    let v = match variant {
        1 => Zeta3Variant::V1,
        2 => Zeta3Variant::V2,
        _ => return Err(PyValueError::new_err("variant must be 1 or 2")),
    };
    Ok(wrap(zeta3_accel(v, &ctx.inner).map_err(err)?, ctx))
}

/// The Amdeberhan-type accelerated series for `sum q^(2n)/[n]^3`.
#[pyfunction]
fn zeta3_amdeberhan_series(ctx: &PyQContext) -> PyResult<PySumResult> {
    Ok(wrap(zeta3_amdeberhan(&ctx.inner).map_err(err)?, ctx))
}

/// Exact telescoping residual of the central-binomial pair over an
/// (n, k) grid; returns the residual as an exact rational string
/// ("0" certifies the pair on that grid).
#[pyfunction]
#[pyo3(signature = (a, ctx, grid=10))]
fn verify_bbb_pair(a: &str, ctx: &PyQContext, grid: u64) -> PyResult<String> {
    let a = parse_rational(a).map_err(err)?;
    let pair = bbb_pair(&a, &ctx.inner, grid + 1).map_err(err)?;
    let r = telescope_residual(&pair, grid, grid, &ctx.inner).map_err(err)?;
    Ok(r.to_string())
}

/// Exact telescoping residual of the zeta(3)-family pair (init 1 or 2).
#[pyfunction]
#[pyo3(signature = (init, ctx, grid=10))]
fn verify_zeta3_pair(init: u8, ctx: &PyQContext, grid: u64) -> PyResult<String> {
    let init = match init {
        1 => Zeta3Init::First,
        2 => Zeta3Init::Second,
        _ => return Err(PyValueError::new_err("init must be 1 or 2")),
    };
    let pair = zeta3_pair(init.values(), &ctx.inner, grid + 1).map_err(err)?;
    let r = telescope_residual(&pair, grid, grid, &ctx.inner).map_err(err)?;
    Ok(r.to_string())
}

#[pymodule]
fn qzeta_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQContext>()?;
    m.add_class::<PySumResult>()?;
    m.add_function(wrap_pyfunction!(zeta_q, m)?)?;
    m.add_function(wrap_pyfunction!(zeta3_alt, m)?)?;
    m.add_function(wrap_pyfunction!(genfunc_lhs, m)?)?;
    m.add_function(wrap_pyfunction!(bbb_t1, m)?)?;
    m.add_function(wrap_pyfunction!(bbb_t2, m)?)?;
    m.add_function(wrap_pyfunction!(zeta3_accelerated, m)?)?;
    m.add_function(wrap_pyfunction!(zeta3_amdeberhan_series, m)?)?;
    m.add_function(wrap_pyfunction!(verify_bbb_pair, m)?)?;
    m.add_function(wrap_pyfunction!(verify_zeta3_pair, m)?)?;
    Ok(())
}
