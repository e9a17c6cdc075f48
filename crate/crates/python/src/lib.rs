//! Python bindings for `recsunit`.
//!
//! Expressions are accepted either as strings or as `RatFunc` objects. Reports are
//! returned as plain Python dictionaries with the same layout as the CLI's JSON output.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde_json::Value;

use recsunit::bounds::{self, BoundParams};
use recsunit::cli::{bound_json, divisor_json, solution_json, spec_json, verify_json, ProblemSpec};
use recsunit::exactalg::{parse_expr, RatFunc};
use recsunit::places::{self, Height, PlaceSet};
use recsunit::recurrence::{self, Recurrence};
use recsunit::solver::{self, SolveMode, SolveOptions};
use recsunit::Error;

create_exception!(pyrecsunit, HypothesisError, PyValueError, "A bound hypothesis does not hold.");

fn to_py(e: Error) -> PyErr {
    match &e {
        Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        _ if e.hypothesis().is_some() => {
            HypothesisError::new_err((e.to_string(), e.hypothesis().map(|h| h.name())))
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_dict<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// A rational function in x with rational coefficients, kept in lowest terms.
#[pyclass(name = "RatFunc", module = "pyrecsunit", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyRatFunc {
    inner: RatFunc,
}

impl From<RatFunc> for PyRatFunc {
    fn from(inner: RatFunc) -> Self {
        PyRatFunc { inner }
    }
}

/// Either a `RatFunc`, a string expression or a Python integer.
#[derive(FromPyObject)]
pub enum Expr {
    Func(PyRatFunc),
    Int(BigInt),
    Text(String),
}

impl Expr {
    fn value(self) -> PyResult<RatFunc> {
        match self {
            Expr::Func(f) => Ok(f.inner),
            Expr::Int(n) => Ok(RatFunc::constant(n.into())),
            Expr::Text(t) => parse_expr(&t).map_err(to_py),
        }
    }
}

fn values(exprs: Vec<Expr>) -> PyResult<Vec<RatFunc>> {
    exprs.into_iter().map(Expr::value).collect()
}

#[pymethods]
impl PyRatFunc {
    #[new]
    fn new(expr: Expr) -> PyResult<Self> {
        expr.value().map(Self::from)
    }

    #[staticmethod]
    fn x() -> Self {
        RatFunc::x().into()
    }

    /// Numerator as a rendered polynomial.
    #[getter]
    fn numerator(&self) -> String {
        self.inner.num().render()
    }

    #[getter]
    fn denominator(&self) -> String {
        self.inner.den().render()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_constant(&self) -> bool {
        self.inner.is_constant()
    }

    /// Height, or None for the zero function.
    fn height(&self) -> Option<u64> {
        places::height(&self.inner).finite()
    }

    /// Valuations keyed by place; the place at infinity is keyed "inf".
    fn divisor<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let (d, _) = places::divisor(&self.inner, &[]).map_err(to_py)?;
        to_dict(py, &divisor_json(&d))
    }

    fn is_s_unit(&self, places: &PyPlaceSet) -> bool {
        places::is_s_unit(&self.inner, &places.inner)
    }

    fn __add__(&self, other: Expr) -> PyResult<Self> {
        Ok(self.inner.add(&other.value()?).into())
    }

    fn __radd__(&self, other: Expr) -> PyResult<Self> {
        self.__add__(other)
    }

    fn __sub__(&self, other: Expr) -> PyResult<Self> {
        Ok(self.inner.sub(&other.value()?).into())
    }

    fn __rsub__(&self, other: Expr) -> PyResult<Self> {
        Ok(other.value()?.sub(&self.inner).into())
    }

    fn __mul__(&self, other: Expr) -> PyResult<Self> {
        Ok(self.inner.mul(&other.value()?).into())
    }

    fn __rmul__(&self, other: Expr) -> PyResult<Self> {
        self.__mul__(other)
    }

    fn __truediv__(&self, other: Expr) -> PyResult<Self> {
        self.inner.div(&other.value()?).map(Self::from).map_err(to_py)
    }

    fn __rtruediv__(&self, other: Expr) -> PyResult<Self> {
        other.value()?.div(&self.inner).map(Self::from).map_err(to_py)
    }

    fn __pow__(&self, k: i64, modulo: Option<i64>) -> PyResult<Self> {
        if modulo.is_some() {
            return Err(PyValueError::new_err("modular powers are not supported"));
        }
        self.inner.pow(k).map(Self::from).map_err(to_py)
    }

    fn __neg__(&self) -> Self {
        self.inner.neg().into()
    }

    fn __str__(&self) -> String {
        self.inner.render()
    }

    fn __repr__(&self) -> String {
        format!("RatFunc('{}')", self.inner.render())
    }
}

/// A finite set of places given by polynomials, optionally with the place at infinity.
#[pyclass(name = "PlaceSet", module = "pyrecsunit", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyPlaceSet {
    inner: PlaceSet,
}

#[pymethods]
impl PyPlaceSet {
    /// Built from expressions; "inf" adds the place at infinity.
    #[new]
    #[pyo3(signature = (places = Vec::new()))]
    fn new(places: Vec<String>) -> PyResult<Self> {
        PlaceSet::parse(&places).map(|inner| PyPlaceSet { inner }).map_err(to_py)
    }

    #[getter]
    fn places(&self) -> Vec<String> {
        self.inner.render()
    }

    #[getter]
    fn has_infinity(&self) -> bool {
        self.inner.has_infinity()
    }

    fn __len__(&self) -> usize {
        places::place_count(&self.inner) as usize
    }

    fn __contains__(&self, f: Expr) -> PyResult<bool> {
        Ok(places::is_s_unit(&f.value()?, &self.inner))
    }

    fn __repr__(&self) -> String {
        format!("PlaceSet({:?})", self.inner.render())
    }
}

fn user_places(places: Option<&PyPlaceSet>) -> PlaceSet {
    places.map(|p| p.inner.clone()).unwrap_or_default()
}

fn parse_mode(mode: &str) -> PyResult<SolveMode> {
    match mode {
        "single" => Ok(SolveMode::Single),
        "pair" => Ok(SolveMode::Pair),
        _ => Err(PyValueError::new_err(format!("unknown mode '{mode}', expected 'single' or 'pair'"))),
    }
}

/// A simple linear recurrence G_n = sum of a_i * alpha_i^n.
#[pyclass(name = "Recurrence", module = "pyrecsunit", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyRecurrence {
    inner: Recurrence,
}

impl PyRecurrence {
    fn spec(&self, places: PlaceSet, mode: SolveMode, indices: Option<Vec<u64>>) -> ProblemSpec {
        ProblemSpec { recurrence: self.inner.clone(), places, mode, indices, window: None }
    }
}

#[pymethods]
impl PyRecurrence {
    #[new]
    fn new(coefficients: Vec<Expr>, roots: Vec<Expr>) -> PyResult<Self> {
        let inner = Recurrence::new(values(coefficients)?, values(roots)?).map_err(to_py)?;
        Ok(PyRecurrence { inner })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn coefficients(&self) -> Vec<PyRatFunc> {
        self.inner.coeffs().iter().cloned().map(PyRatFunc::from).collect()
    }

    #[getter]
    fn roots(&self) -> Vec<PyRatFunc> {
        self.inner.roots().iter().cloned().map(PyRatFunc::from).collect()
    }

    fn term(&self, n: u64) -> PyRatFunc {
        self.inner.term(n).into()
    }

    /// Sum of terms at strictly decreasing indices.
    fn sum_terms(&self, indices: Vec<u64>) -> PyResult<PyRatFunc> {
        self.inner.sum_terms(&indices).map(PyRatFunc::from).map_err(to_py)
    }

    fn is_nondegenerate(&self) -> bool {
        recurrence::is_nondegenerate(&self.inner)
    }

    fn roots_nonconstant(&self) -> bool {
        recurrence::roots_nonconstant(&self.inner)
    }

    fn pairwise_mult_independent(&self) -> bool {
        recurrence::pairwise_mult_independent(&self.inner)
    }

    /// Bound constants without enumeration.
    #[pyo3(signature = (mode = "single", places = None))]
    fn bound<'py>(&self, py: Python<'py>, mode: &str, places: Option<&PyPlaceSet>) -> PyResult<Bound<'py, PyAny>> {
        let s = user_places(places);
        let (r, params) = (&self.inner, BoundParams::default());
        let b = py
            .detach(|| match parse_mode(mode)? {
                SolveMode::Single => bounds::theorem1_bound(r, &s, params).map_err(to_py),
                _ => bounds::theorem2_bound(r, &s, params).map_err(to_py),
            })?;
        to_dict(py, &bound_json(&b))
    }

    /// Bound plus every solution below it.
    #[pyo3(signature = (mode = "single", places = None, threads = None))]
    fn solve<'py>(
        &self,
        py: Python<'py>,
        mode: &str,
        places: Option<&PyPlaceSet>,
        threads: Option<usize>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let mode = parse_mode(mode)?;
        if threads == Some(0) {
            return Err(PyValueError::new_err("threads must be at least 1"));
        }
        let s = user_places(places);
        let options = SolveOptions { threads, ..SolveOptions::default() };
        let r = &self.inner;
        let rep = py
            .detach(|| match mode {
                SolveMode::Single => solver::solve_single(r, &s, &options),
                _ => solver::solve_pair(r, &s, &options),
            })
            .map_err(to_py)?;
        to_dict(py, &solution_json(spec_json(&self.spec(s, mode, None)), &rep))
    }

    /// Whether the sum of terms at the given indices is an S-unit.
    #[pyo3(signature = (indices, places = None))]
    fn verify<'py>(&self, py: Python<'py>, indices: Vec<u64>, places: Option<&PyPlaceSet>) -> PyResult<Bound<'py, PyAny>> {
        let s = user_places(places);
        let outcome = solver::verify_sum(&self.inner, &s, &indices).map_err(to_py)?;
        to_dict(py, &verify_json(spec_json(&self.spec(s, SolveMode::Verify, Some(indices))), &outcome))
    }

    fn __repr__(&self) -> String {
        let show = |fs: &[RatFunc]| fs.iter().map(|f| format!("'{}'", f.render())).collect::<Vec<_>>().join(", ");
        format!("Recurrence([{}], [{}])", show(self.inner.coeffs()), show(self.inner.roots()))
    }
}

/// Height of an expression, or None for zero.
#[pyfunction]
fn height(f: Expr) -> PyResult<Option<u64>> {
    Ok(match places::height(&f.value()?) {
        Height::Finite(h) => Some(h),
        Height::Infinite => None,
    })
}

#[pyfunction]
fn divisor<'py>(py: Python<'py>, f: Expr) -> PyResult<Bound<'py, PyAny>> {
    PyRatFunc::from(f.value()?).divisor(py)
}

#[pyfunction]
fn is_s_unit(f: Expr, places: &PyPlaceSet) -> PyResult<bool> {
    Ok(places::is_s_unit(&f.value()?, &places.inner))
}

/// The bound on the height of a nonconstant solution of an S-unit equation in k terms.
#[pyfunction]
#[pyo3(signature = (k, s_count, genus = 0))]
fn bm_bound(k: u64, s_count: u64, genus: u64) -> u64 {
    bounds::bm_bound(k, s_count, genus)
}

/// Lower bound c with H(gamma^n / delta^m) >= c max(n, m), as a Fraction.
#[pyfunction]
fn lattice_gap<'py>(py: Python<'py>, gamma: Expr, delta: Expr) -> PyResult<Bound<'py, PyAny>> {
    let c = bounds::lattice_gap(&gamma.value()?, &delta.value()?).map_err(to_py)?;
    py.import("fractions")?.getattr("Fraction")?.call1((c.numer().clone(), c.denom().clone()))
}

/// Registers every class and function on `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRatFunc>()?;
    m.add_class::<PyPlaceSet>()?;
    m.add_class::<PyRecurrence>()?;
    m.add("HypothesisError", m.py().get_type::<HypothesisError>())?;
    m.add_function(wrap_pyfunction!(height, m)?)?;
    m.add_function(wrap_pyfunction!(divisor, m)?)?;
    m.add_function(wrap_pyfunction!(is_s_unit, m)?)?;
    m.add_function(wrap_pyfunction!(bm_bound, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_gap, m)?)?;
    Ok(())
}

#[pymodule]
fn pyrecsunit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
