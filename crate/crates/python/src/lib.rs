//! Python bindings: rings with relations, ideals, graded invariants and the
//! Frobenius and ordinary power profiles. Rationals come back as
//! `fractions.Fraction`.

// pyo3 0.22 macro expansions trip this lint on every PyResult method
#![allow(clippy::useless_conversion)]

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use frobx::hilbert::{self, EndDegree};
use frobx::lab::{self, Rational};
use frobx::{Error, IdealHandle, QuotientPresentation};

create_exception!(frobx_py, FrobxError, PyException);

fn err(e: Error) -> PyErr {
    FrobxError::new_err(e.to_string())
}

fn fraction(py: Python<'_>, r: Rational) -> PyResult<PyObject> {
    let cls = py.import_bound("fractions")?.getattr("Fraction")?;
    Ok(cls.call1((*r.numer(), *r.denom()))?.unbind())
}

fn end_value(e: EndDegree) -> Option<u32> {
    e.degree()
}

#[pyclass(name = "Ring", module = "frobx_py", frozen)]
struct PyRing {
    pres: Arc<QuotientPresentation>,
}

#[pymethods]
impl PyRing {
    #[new]
    #[pyo3(signature = (p, vars, relations = Vec::new()))]
    fn new(p: u64, vars: Vec<String>, relations: Vec<String>) -> PyResult<Self> {
        Ok(PyRing { pres: QuotientPresentation::parse(p, &vars, &relations).map_err(err)? })
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.pres.ring().characteristic()
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.pres.ring().vars().to_vec()
    }

    #[getter]
    fn relations(&self) -> Vec<String> {
        self.pres.relations().iter().map(|r| r.to_string()).collect()
    }

    fn ideal(&self, generators: Vec<String>) -> PyResult<PyIdeal> {
        Ok(PyIdeal(IdealHandle::parse(&self.pres, &generators).map_err(err)?))
    }

    fn irrelevant(&self) -> PyIdeal {
        PyIdeal(IdealHandle::irrelevant(&self.pres))
    }

    /// Canonical printed form of a polynomial.
    fn normalize(&self, f: &str) -> PyResult<String> {
        Ok(self.pres.ring().parse(f).map_err(err)?.to_string())
    }

    fn __repr__(&self) -> String {
        let ring = self.pres.ring();
        format!("Ring(p={}, vars={:?}, relations={:?})", ring.characteristic(), ring.vars(), self.relations())
    }
}

#[pyclass(name = "Ideal", module = "frobx_py", frozen)]
#[derive(Clone)]
struct PyIdeal(IdealHandle);

impl PyIdeal {
    fn parse(&self, f: &str) -> PyResult<frobx::Polynomial> {
        self.0.ring().parse(f).map_err(err)
    }
}

#[pymethods]
impl PyIdeal {
    fn generators(&self) -> Vec<String> {
        self.0.generators().iter().map(|g| g.to_string()).collect()
    }

    /// Reduced Gröbner basis, relations included.
    fn basis(&self) -> Vec<String> {
        self.0.basis().elements().iter().map(|g| g.to_string()).collect()
    }

    fn contains(&self, f: &str) -> PyResult<bool> {
        self.0.contains(&self.parse(f)?).map_err(err)
    }

    fn is_unit(&self) -> bool {
        self.0.is_unit()
    }

    fn is_homogeneous(&self) -> bool {
        self.0.is_homogeneous()
    }

    fn has_finite_colength(&self) -> bool {
        self.0.has_finite_colength()
    }

    fn sum(&self, other: &PyIdeal) -> PyResult<PyIdeal> {
        Ok(PyIdeal(self.0.sum(&other.0).map_err(err)?))
    }

    fn product(&self, other: &PyIdeal) -> PyResult<PyIdeal> {
        Ok(PyIdeal(self.0.product(&other.0).map_err(err)?))
    }

    fn intersect(&self, other: &PyIdeal) -> PyResult<PyIdeal> {
        Ok(PyIdeal(self.0.intersect(&other.0).map_err(err)?))
    }

    fn colon(&self, f: &str) -> PyResult<PyIdeal> {
        Ok(PyIdeal(self.0.colon_element(&self.parse(f)?).map_err(err)?))
    }

    fn frobenius_power(&self, e: u32) -> PyResult<PyIdeal> {
        Ok(PyIdeal(self.0.frobenius_power(e).map_err(err)?))
    }

    fn ordinary_power(&self, n: u32) -> PyResult<PyIdeal> {
        Ok(PyIdeal(self.0.ordinary_power(n).map_err(err)?))
    }

    fn saturation(&self) -> PyResult<PyIdeal> {
        Ok(PyIdeal(self.0.saturation().map_err(err)?))
    }

    fn hilbert_numerator(&self) -> PyResult<Vec<i64>> {
        Ok(hilbert::hilbert_numerator(&self.0).map_err(err)?.coefficients)
    }

    fn hilbert_function(&self, max_degree: usize) -> PyResult<Vec<i64>> {
        hilbert::hilbert_numerator(&self.0).and_then(|n| n.dimensions(max_degree)).map_err(err)
    }

    /// `None` for the zero ring.
    fn krull_dimension(&self) -> PyResult<Option<usize>> {
        Ok(match hilbert::krull_dimension(&self.0).map_err(err)? {
            hilbert::KrullDimension::Empty => None,
            hilbert::KrullDimension::Dim(d) => Some(d),
        })
    }

    fn length(&self) -> PyResult<u64> {
        hilbert::length_of_quotient(&self.0).map_err(err)
    }

    /// `{"length", "end", "diff"}` for `J^sat/J`; `end` is `None` when it vanishes.
    fn h0<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let h = hilbert::h0_summary(&self.0).map_err(err)?;
        let d = PyDict::new_bound(py);
        d.set_item("length", h.length)?;
        d.set_item("end", end_value(h.end))?;
        d.set_item("diff", h.diff)?;
        Ok(d)
    }

    fn ann_exponent(&self) -> PyResult<u32> {
        lab::ann_exponent(&self.0).map_err(err)
    }

    fn frobenius_profile<'py>(&self, py: Python<'py>, emax: u32) -> PyResult<Bound<'py, PyDict>> {
        let prof = lab::frobenius_profile(&self.0, emax).map_err(err)?;
        let rows = PyList::empty_bound(py);
        for r in &prof.rows {
            let d = PyDict::new_bound(py);
            d.set_item("e", r.e)?;
            d.set_item("q", r.q)?;
            d.set_item("h0_length", r.h0_length)?;
            d.set_item("h0_end", end_value(r.h0_end))?;
            d.set_item("ann_exp", r.ann_exp)?;
            d.set_item("v", r.v)?;
            d.set_item("ratio_hk", fraction(py, r.ratio_hk)?)?;
            d.set_item("ratio_v", r.ratio_v.map(|x| fraction(py, x)).transpose()?)?;
            rows.append(d)?;
        }
        let out = PyDict::new_bound(py);
        out.set_item("rows", rows)?;
        out.set_item("b_hat", prof.b_hat)?;
        out.set_item("c_hat", prof.c_hat)?;
        out.set_item("e_ghk", fraction(py, lab::eghk_estimate(&prof).value)?)?;
        out.set_item("dim", prof.dim)?;
        Ok(out)
    }

    #[pyo3(signature = (nmax, symbolic = false))]
    fn powers_profile<'py>(&self, py: Python<'py>, nmax: u32, symbolic: bool) -> PyResult<Bound<'py, PyDict>> {
        let prof = lab::powers_profile(&self.0, nmax, symbolic).map_err(err)?;
        let rows = PyList::empty_bound(py);
        for r in &prof.rows {
            let d = PyDict::new_bound(py);
            d.set_item("n", r.n)?;
            d.set_item("h0_length", r.h0_length)?;
            d.set_item("ann_exp", r.ann_exp)?;
            d.set_item("alpha_sat", r.alpha_sat)?;
            d.set_item("ratio_alpha", fraction(py, r.ratio_alpha)?)?;
            d.set_item("ratio_len", fraction(py, r.ratio_len)?)?;
            rows.append(d)?;
        }
        let out = PyDict::new_bound(py);
        out.set_item("rows", rows)?;
        out.set_item("d_hat", prof.d_hat)?;
        out.set_item("waldschmidt_upper", fraction(py, prof.waldschmidt_upper)?)?;
        out.set_item("warnings", prof.warnings)?;
        Ok(out)
    }

    fn symbolic_power(&self, n: u32) -> PyResult<PyIdeal> {
        Ok(PyIdeal(lab::symbolic_power(&self.0, n).map_err(err)?))
    }

    /// Least `e ≤ emax` with `x^q ∈ I^[q]`, or `None`.
    fn frobenius_closure_probe(&self, x: &str, emax: u32) -> PyResult<Option<u32>> {
        Ok(lab::frobenius_closure_probe(&self.parse(x)?, &self.0, emax).map_err(err)?.member_at)
    }

    #[pyo3(signature = (x, cap = 4, emax = 3))]
    fn tight_closure_witness(&self, x: &str, cap: u32, emax: u32) -> PyResult<Option<String>> {
        let w = lab::tight_closure_witness_search(&self.parse(x)?, &self.0, cap, emax).map_err(err)?;
        Ok(w.map(|w| w.c.to_string()))
    }

    fn __eq__(&self, other: &PyIdeal) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Ideal({})", self.generators().join(", "))
    }
}

/// `(alpha, beta)` for a curve of degree `d`, generator degrees `d1, d2` and
/// the rational `e` given as a string like "1/2".
#[pyfunction]
fn brenner_bound(py: Python<'_>, d: u32, d1: u32, d2: u32, e: &str) -> PyResult<(PyObject, PyObject)> {
    let e: Rational = e.parse().map_err(|_| FrobxError::new_err(format!("`{e}` is not a rational number")))?;
    let (a, b) = lab::brenner_bound(d, d1, d2, e).map_err(err)?;
    Ok((fraction(py, a)?, fraction(py, b)?))
}

/// One `(id, passed, corrected, detail)` tuple per acceptance criterion.
#[pyfunction]
#[pyo3(signature = (quick = true))]
fn selftest(quick: bool) -> Vec<(u32, bool, Option<bool>, String)> {
    frobx::selftest::run_selftest(quick).into_iter().map(|r| (r.id, r.passed, r.corrected, r.detail)).collect()
}

/// Runs the command line with `argv` (without the program name); returns the exit code.
#[pyfunction]
fn run_cli(py: Python<'_>, argv: Vec<String>) -> i32 {
    py.allow_threads(|| frobx::cli::run_command(std::iter::once("frobx".to_string()).chain(argv)))
}

#[pymodule]
fn frobx_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyIdeal>()?;
    m.add("FrobxError", m.py().get_type_bound::<FrobxError>())?;
    m.add_function(wrap_pyfunction!(brenner_bound, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
