//! Python bindings. Exact rationals cross the boundary as `fractions.Fraction`
//! and big integers as Python `int`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use lambda_modeq::arith::AlphaContext;
use lambda_modeq::bpoly;
use lambda_modeq::format;
use lambda_modeq::modeq::{self, PrimeParams};
use lambda_modeq::ode;
use lambda_modeq::qseries::{self, XYParams};
use lambda_modeq::report::Report;
use lambda_modeq::{Error, ExactRational};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::InvalidPrime(_)
        | Error::InvalidArgument(_)
        | Error::Parse(_)
        | Error::Dimension(_)
        | Error::AboveThreshold { .. } => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, x: &ExactRational) -> PyResult<Bound<'py, PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    cls.call1((x.numer().clone(), x.denom().clone()))
}

fn fractions<'py>(py: Python<'py>, xs: &[ExactRational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    xs.iter().map(|x| fraction(py, x)).collect()
}

/// Accepts `int`, `fractions.Fraction`, or anything with integer
/// `numerator` / `denominator` attributes.
fn rational_arg(x: &Bound<'_, PyAny>) -> PyResult<ExactRational> {
    let num: BigInt = x.getattr("numerator")?.extract()?;
    let den: BigInt = x.getattr("denominator")?.extract()?;
    if den == BigInt::from(0) {
        return Err(PyValueError::new_err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn params(p: i64) -> PyResult<PrimeParams> {
    modeq::params_for(p).map_err(to_py_err)
}

fn report_dict<'py>(py: Python<'py>, report: &Report) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("title", &report.title)?;
    d.set_item("passed", report.passed())?;
    let checks: Vec<(String, bool, String)> = report
        .checks
        .iter()
        .map(|c| (c.name.clone(), c.passed, c.detail.clone()))
        .collect();
    d.set_item("checks", checks)?;
    d.set_item("notes", report.notes.clone())?;
    Ok(d)
}

/// `(m, n)` with `(p + 1) / 8 = m / n` in lowest terms.
#[pyfunction]
fn params_for(p: i64) -> PyResult<(u32, u32)> {
    let pp = params(p)?;
    Ok((pp.m, pp.n))
}

/// The integer coefficient matrix `A_p` of the modular equation.
#[pyclass(
    name = "ModularMatrix",
    module = "lambda_modeq",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PyModularMatrix {
    inner: modeq::ModularMatrix,
}

#[pymethods]
impl PyModularMatrix {
    #[getter]
    fn p(&self) -> u64 {
        self.inner.params().p
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.params().m
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.params().n
    }

    /// Rows as lists of Python ints.
    fn entries(&self) -> Vec<Vec<BigInt>> {
        self.inner.entries().to_vec()
    }

    fn __getitem__(&self, index: (usize, usize)) -> PyResult<BigInt> {
        let (i, h) = index;
        let size = self.inner.m() + 1;
        if i >= size || h >= size {
            return Err(pyo3::exceptions::PyIndexError::new_err(format!(
                "index ({i}, {h}) out of range for a {size}x{size} matrix"
            )));
        }
        Ok(self.inner.get(i, h).clone())
    }

    fn __len__(&self) -> usize {
        self.inner.m() + 1
    }

    fn __repr__(&self) -> String {
        format!(
            "ModularMatrix(p={}, m={}, n={})",
            self.p(),
            self.m(),
            self.n()
        )
    }

    fn __str__(&self) -> String {
        format::to_text(&self.inner)
    }

    fn to_text(&self) -> String {
        format::to_text(&self.inner)
    }

    fn to_typeset(&self) -> String {
        format::to_typeset(&self.inner)
    }

    fn to_structured(&self) -> String {
        format::to_structured(&self.inner)
    }

    #[staticmethod]
    fn from_structured(text: &str) -> PyResult<Self> {
        let doc = format::parse_structured(text).map_err(to_py_err)?;
        let inner = doc.to_matrix().map_err(to_py_err)?;
        Ok(Self { inner })
    }

    /// Symmetry flags as stored in the structured document.
    fn symmetry(&self) -> BTreeMap<String, bool> {
        format::verification_flags(&self.inner)
    }

    /// Every built-in check as a dict with `passed`, `checks` and `notes`.
    #[pyo3(signature = (order=None))]
    fn verify<'py>(&self, py: Python<'py>, order: Option<usize>) -> PyResult<Bound<'py, PyDict>> {
        let report = py
            .detach(|| modeq::verify_all(&self.inner, order))
            .map_err(to_py_err)?;
        report_dict(py, &report)
    }
}

/// Solve for `A_p` from scratch.
#[pyfunction]
fn assemble(py: Python<'_>, p: i64) -> PyResult<PyModularMatrix> {
    let inner = py.detach(|| modeq::assemble(p)).map_err(to_py_err)?;
    Ok(PyModularMatrix { inner })
}

/// Selected checks: any of "symmetry", "rowsums", "dets", "theorem52", "global".
#[pyfunction]
#[pyo3(signature = (p, checks, order=None))]
fn verify<'py>(
    py: Python<'py>,
    p: i64,
    checks: Vec<String>,
    order: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let pp = params(p)?;
    let a = py
        .detach(|| modeq::assemble_params(&pp))
        .map_err(to_py_err)?;
    let mut report = Report::new(format!("verification of A_{p}"));
    for name in &checks {
        match name.as_str() {
            "symmetry" => report.absorb(modeq::verify_symmetry(&a)),
            "rowsums" => report.absorb(modeq::verify_row_moments(&a)),
            "dets" => report.absorb(modeq::verify_block_determinants(&pp).map_err(to_py_err)?),
            "theorem52" => {
                report.absorb(modeq::theorem52_part1(&pp).map_err(to_py_err)?);
                report.absorb(modeq::theorem52_part2(&pp).map_err(to_py_err)?);
                report.absorb(modeq::theorem52_part3(&pp).map_err(to_py_err)?);
            }
            "global" => {
                let t = order.unwrap_or_else(|| pp.default_vanish_order());
                report.absorb(modeq::verify_global_vanish(&a, t));
            }
            other => return Err(PyValueError::new_err(format!("unknown check {other:?}"))),
        }
    }
    report_dict(py, &report)
}

/// `α_p(k)` as a `Fraction`.
#[pyfunction]
fn alpha(py: Python<'_>, p: i64, k: u64) -> PyResult<Bound<'_, PyAny>> {
    if k == 0 {
        return Err(PyValueError::new_err("k must be at least 1"));
    }
    let ctx = AlphaContext::new(params(p)?.p).map_err(to_py_err)?;
    fraction(py, &ctx.alpha(k))
}

/// `b_l(u, v)` for the `n` belonging to `p`.
#[pyfunction]
#[pyo3(signature = (p, l, u, v, method="recurrence"))]
fn b_eval<'py>(
    py: Python<'py>,
    p: i64,
    l: u32,
    u: &Bound<'py, PyAny>,
    v: &Bound<'py, PyAny>,
    method: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let bc = params(p)?.b_context();
    let (u, v) = (rational_arg(u)?, rational_arg(v)?);
    let value = match method {
        "partition" => bc.b_eval(l, &u, &v).map_err(to_py_err)?,
        "recurrence" => bc.b_eval_fast(l, &u, &v).swap_remove(l as usize),
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    fraction(py, &value)
}

#[pyfunction]
fn p_poly(py: Python<'_>, s: u32, m: u32) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &bpoly::p_poly(s, m))
}

#[pyfunction]
fn binomial_moment(py: Python<'_>, big_n: u32, m: u32) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &bpoly::binomial_moment(big_n, m))
}

/// Coefficients of `q^0 … q^order` for "lambda" or "one_minus_lambda".
#[pyfunction]
fn series<'py>(py: Python<'py>, kind: &str, order: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let s = match kind {
        "lambda" if order >= 1 => qseries::lambda_series(order),
        "lambda" => return Err(PyValueError::new_err("lambda needs order >= 1")),
        "one_minus_lambda" => qseries::one_minus_lambda_series(order),
        other => return Err(PyValueError::new_err(format!("unknown series {other:?}"))),
    };
    fractions(py, s.coeffs())
}

/// Normalized `X^i Y^h` coefficients, by direct eta products or from `b_l(i + 2h, i)`.
#[pyfunction]
#[pyo3(signature = (p, i, h, order, method="direct"))]
fn xy_series<'py>(
    py: Python<'py>,
    p: i64,
    i: u32,
    h: u32,
    order: usize,
    method: &str,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let pp = params(p)?;
    if i + h > pp.m {
        return Err(PyValueError::new_err(format!("need i + h <= m = {}", pp.m)));
    }
    let xp = XYParams::new(pp, i, h);
    let s = match method {
        "direct" => qseries::xy_normalized_direct(&xp, order),
        "lemma" => qseries::xy_normalized_lemma(&xp, order),
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    fractions(py, s.coeffs())
}

/// `(vanishes, first_nonzero_index)` for the differential equation of λ.
#[pyfunction]
#[pyo3(signature = (order=40))]
fn ode_check(py: Python<'_>, order: usize) -> PyResult<(bool, Option<usize>)> {
    if order < 10 {
        return Err(PyValueError::new_err("order must be at least 10"));
    }
    let r = py.detach(|| ode::ode_residual(order));
    Ok((r.vanishes(), r.first_nonzero()))
}

/// Row-1 moment checks for every odd prime up to `max_p`.
#[pyfunction]
fn scan<'py>(py: Python<'py>, max_p: u64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let rows = py.detach(|| modeq::scan(max_p)).map_err(to_py_err)?;
    rows.iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("p", r.p)?;
            d.set_item("m", r.m)?;
            d.set_item("n", r.n)?;
            let parse = |s: &str| -> PyResult<Bound<'py, PyAny>> {
                let x: ExactRational = s
                    .parse()
                    .map_err(|_| PyRuntimeError::new_err("bad moment"))?;
                fraction(py, &x)
            };
            d.set_item(
                "moments",
                (
                    parse(&r.first_moment)?,
                    parse(&r.second_moment)?,
                    parse(&r.third_moment)?,
                ),
            )?;
            d.set_item("passed", r.passed)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
#[pyo3(name = "lambda_modeq")]
fn lambda_modeq_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModularMatrix>()?;
    m.add_function(wrap_pyfunction!(params_for, m)?)?;
    m.add_function(wrap_pyfunction!(assemble, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(b_eval, m)?)?;
    m.add_function(wrap_pyfunction!(p_poly, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_moment, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(xy_series, m)?)?;
    m.add_function(wrap_pyfunction!(ode_check, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add("SCHEMA_VERSION", format::SCHEMA_VERSION)?;
    Ok(())
}
