//! Python bindings. Rationals and maps cross the boundary as strings such
//! as `"-11/3"` and `"(x^2 - 2)/(x + 1)"`; reports come back as plain
//! dicts and lists.

use std::collections::BTreeMap;

use critcycle::arith::{fmt_rational, parse_rational, Rational};
use critcycle::cli::parse_rational_map;
use critcycle::curves::{build_named_curve, CurveFamily};
use critcycle::dynamics::RationalMap;
use critcycle::moduli::{self, family_map, FamilyId};
use critcycle::portraits::{self, classify, CensusOptions, FieldDesc, PortraitOptions};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;
use serde_json::Value;

fn py_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(s: &str) -> PyResult<Rational> {
    parse_rational(s).map_err(py_err)
}

fn map(s: &str) -> PyResult<RationalMap<Rational>> {
    parse_rational_map(s, &BTreeMap::new()).map_err(py_err)
}

fn family(s: &str) -> PyResult<FamilyId> {
    s.parse().map_err(py_err)
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn ser<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &serde_json::to_value(v).map_err(py_err)?)
}

/// `F_n(r, s)` cutting out maps with an `n`-periodic critical point.
#[pyfunction]
fn curve_equation(py: Python<'_>, n: usize) -> PyResult<String> {
    py.detach(|| moduli::curve_equation(n)).map(|f| f.display()).map_err(py_err)
}

/// `(σ₁, σ₂)` of a degree-2 map.
#[pyfunction]
fn coordinates(phi: &str) -> PyResult<(String, String)> {
    let (r, s) = moduli::coordinates(&map(phi)?).map_err(py_err)?.pair();
    Ok((fmt_rational(&r), fmt_rational(&s)))
}

#[pyfunction]
#[pyo3(signature = (phi, n, m = 0))]
fn dynatomic(phi: &str, n: usize, m: usize) -> PyResult<String> {
    let phi = map(phi)?;
    let d = if m == 0 { phi.dynatomic(n) } else { phi.generalized_dynatomic(m, n) };
    Ok(d.map_err(py_err)?.poly.to_string())
}

#[pyfunction]
fn u_invariant(phi: &str, n: usize) -> PyResult<String> {
    map(phi)?.u_invariant(n).map(|u| fmt_rational(&u)).map_err(py_err)
}

/// Rational preperiodic portrait of a family member.
#[pyfunction]
#[pyo3(signature = (family_name, c, max_period = None))]
fn portrait<'py>(py: Python<'py>, family_name: &str, c: &str, max_period: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let phi = family_map(family(family_name)?, &rational(c)?).map_err(py_err)?;
    let mut opts = PortraitOptions::default();
    if let Some(n) = max_period {
        opts.n_max = n;
    }
    let g = py.detach(|| portraits::portrait(&phi, &FieldDesc::Rational, opts)).map_err(py_err)?;
    let mut v = portraits::to_json(&g);
    v["class"] = Value::from(classify(&g));
    v["cycle_lengths"] = serde_json::json!(g.class().cycle_lengths);
    to_py(py, &v)
}

#[pyfunction]
fn classify_psi<'py>(py: Python<'py>, c: &str) -> PyResult<Bound<'py, PyAny>> {
    let c = rational(c)?;
    let rep = py.detach(|| moduli::classify_psi_portrait(&c)).map_err(py_err)?;
    ser(py, &rep)
}

#[pyfunction]
fn intersect_symmetry<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let rep = py.detach(|| moduli::intersect_symmetry(n)).map_err(py_err)?;
    ser(py, &rep)
}

/// Portrait classes of every admissible parameter up to a height bound.
#[pyfunction]
#[pyo3(signature = (family_name, height, jobs = None))]
fn census<'py>(py: Python<'py>, family_name: &str, height: u64, jobs: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let mut opts = CensusOptions::new(family(family_name)?, height);
    opts.jobs = jobs;
    let rep = py.detach(|| portraits::census(&opts)).map_err(py_err)?;
    ser(py, &rep)
}

/// A named modular curve such as `"Y1(2)"` or `"Y(1,inf)"`.
#[pyfunction]
fn modular_curve<'py>(py: Python<'py>, family_name: &str, name: &str) -> PyResult<Bound<'py, PyAny>> {
    let fam = CurveFamily::from_family(family(family_name)?).map_err(py_err)?;
    let c = py.detach(|| build_named_curve(&fam, name)).map_err(py_err)?;
    to_py(py, &c.to_json())
}

#[pymodule]
fn critcycle_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(curve_equation, m)?)?;
    m.add_function(wrap_pyfunction!(coordinates, m)?)?;
    m.add_function(wrap_pyfunction!(dynatomic, m)?)?;
    m.add_function(wrap_pyfunction!(u_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(portrait, m)?)?;
    m.add_function(wrap_pyfunction!(classify_psi, m)?)?;
    m.add_function(wrap_pyfunction!(intersect_symmetry, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(modular_curve, m)?)?;
    Ok(())
}
