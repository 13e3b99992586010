//! Python bindings: catalogued surfaces, the two bounds, document checks and forest
//! enumeration. Rationals come back as `fractions.Fraction`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use flexbound::bounds;
use flexbound::enumerate;
use flexbound::input::parse_input_str;
use flexbound::rational::Rational;
use flexbound::report::build_report;
use flexbound::surface::{CurveClass, SurfaceModel};

fn to_py_err(e: flexbound::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction(py: Python<'_>, r: &Rational) -> PyResult<Py<PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    Ok(cls.call1((*r.numer(), *r.denom()))?.unbind())
}

fn json_to_py(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Surface", module = "flexbound_py", frozen)]
pub struct PySurface {
    inner: SurfaceModel,
}

#[pymethods]
impl PySurface {
    #[staticmethod]
    fn plane() -> Self {
        PySurface {
            inner: SurfaceModel::plane(),
        }
    }

    #[staticmethod]
    fn quadric() -> Self {
        PySurface {
            inner: SurfaceModel::quadric(),
        }
    }

    #[staticmethod]
    fn hirzebruch(e: u32) -> Self {
        PySurface {
            inner: SurfaceModel::hirzebruch(e),
        }
    }

    #[staticmethod]
    fn del_pezzo(d: u8) -> PyResult<Self> {
        Ok(PySurface {
            inner: SurfaceModel::del_pezzo(d).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn b2(&self) -> u32 {
        self.inner.b2()
    }

    #[getter]
    fn sigma(&self) -> i64 {
        self.inner.sigma()
    }

    fn self_intersection(&self, coords: Vec<i64>) -> PyResult<i128> {
        let xi = CurveClass::new(coords).map_err(to_py_err)?;
        self.inner.self_intersection(&xi).map_err(to_py_err)
    }

    fn genus(&self, coords: Vec<i64>) -> PyResult<u64> {
        let xi = CurveClass::new(coords).map_err(to_py_err)?;
        self.inner.genus(&xi).map_err(to_py_err)
    }

    /// `{"n", "m", "candidates": [h, ...]}` for the class.
    fn divisibility<'py>(&self, py: Python<'py>, coords: Vec<i64>) -> PyResult<Bound<'py, PyDict>> {
        let xi = CurveClass::new(coords).map_err(to_py_err)?;
        let d = self.inner.divisibility(&xi).map_err(to_py_err)?;
        let out = PyDict::new(py);
        out.set_item("n", d.n)?;
        out.set_item("m", d.m)?;
        out.set_item("candidates", d.candidates.iter().map(|c| c.h).collect::<Vec<_>>())?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!("Surface({:?})", self.inner.family())
    }
}

#[pyfunction]
fn rhs_hyperbolic(py: Python<'_>, surface: &PySurface, coords: Vec<i64>, m: u64) -> PyResult<Py<PyAny>> {
    let xi = CurveClass::new(coords).map_err(to_py_err)?;
    let r = bounds::rhs_hyperbolic(&surface.inner, &xi, m).map_err(to_py_err)?;
    fraction(py, &r)
}

#[pyfunction]
#[pyo3(signature = (surface, coords, h, rho=0, delta=0))]
fn rhs_non_elliptic(
    py: Python<'_>,
    surface: &PySurface,
    coords: Vec<i64>,
    h: u64,
    rho: u32,
    delta: u8,
) -> PyResult<Py<PyAny>> {
    let xi = CurveClass::new(coords).map_err(to_py_err)?;
    let r = bounds::rhs_non_elliptic(&surface.inner, &xi, h, rho, delta).map_err(to_py_err)?;
    fraction(py, &r)
}

/// Full report for a JSON input document, as a dict.
#[pyfunction]
fn check_document(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    let doc = parse_input_str(text).map_err(to_py_err)?;
    let report = build_report(&doc, true).map_err(to_py_err)?;
    json_to_py(py, &report.to_json())
}

/// Canonical forests with up to `n_max` ovals, as parenthesis encodings.
#[pyfunction]
fn enumerate_forests(n_max: usize) -> PyResult<Vec<String>> {
    Ok(enumerate::enumerate_forests(n_max)
        .map_err(to_py_err)?
        .map(|f| f.encoding())
        .collect())
}

#[pymodule]
fn flexbound_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySurface>()?;
    m.add_function(wrap_pyfunction!(rhs_hyperbolic, m)?)?;
    m.add_function(wrap_pyfunction!(rhs_non_elliptic, m)?)?;
    m.add_function(wrap_pyfunction!(check_document, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_forests, m)?)?;
    Ok(())
}
