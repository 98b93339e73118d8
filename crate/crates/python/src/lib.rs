//! Python bindings: fields, codes, weight enumerators and claim checks.
//!
//! Field elements cross the boundary as their integer encodings.

use std::collections::BTreeMap;
use std::sync::Arc;

use hermicode::weights::{self, Method};
use hermicode::{Field, FieldElement, HermitianCurve, LinearCode, OrbitSpec, Verifier};
use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: hermicode::Error) -> PyErr {
    match e {
        hermicode::Error::SizeGuard { .. } => PyOverflowError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn element(field: &Field, enc: u32) -> PyResult<FieldElement> {
    field
        .element(enc)
        .ok_or_else(|| PyValueError::new_err(format!("{enc} is not an element of F_{}", field.order())))
}

fn json_loads<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Field", module = "hermicode", frozen)]
pub struct PyField {
    inner: Arc<Field>,
}

#[pymethods]
impl PyField {
    /// F_{q²} for a prime power q.
    #[new]
    fn new(q: u32) -> PyResult<Self> {
        Ok(PyField {
            inner: Arc::new(Field::with_q(q).map_err(py_err)?),
        })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }

    #[getter]
    fn omega(&self) -> u32 {
        self.inner.omega().enc()
    }

    #[getter]
    fn irreducible(&self) -> Vec<u32> {
        self.inner.irreducible().to_vec()
    }

    fn elements(&self) -> Vec<u32> {
        self.inner.elements().map(FieldElement::enc).collect()
    }

    fn add(&self, a: u32, b: u32) -> PyResult<u32> {
        let f = &*self.inner;
        Ok(f.add(element(f, a)?, element(f, b)?).enc())
    }

    fn sub(&self, a: u32, b: u32) -> PyResult<u32> {
        let f = &*self.inner;
        Ok(f.sub(element(f, a)?, element(f, b)?).enc())
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        let f = &*self.inner;
        Ok(f.mul(element(f, a)?, element(f, b)?).enc())
    }

    fn inv(&self, a: u32) -> PyResult<u32> {
        let f = &*self.inner;
        f.inv(element(f, a)?).map(FieldElement::enc).map_err(py_err)
    }

    fn pow(&self, a: u32, e: u64) -> PyResult<u32> {
        let f = &*self.inner;
        Ok(f.pow(element(f, a)?, e).enc())
    }

    fn norm(&self, a: u32) -> PyResult<u32> {
        let f = &*self.inner;
        Ok(f.norm(element(f, a)?).enc())
    }

    fn trace(&self, a: u32) -> PyResult<u32> {
        let f = &*self.inner;
        Ok(f.trace(element(f, a)?).enc())
    }

    fn frobenius(&self, a: u32) -> PyResult<u32> {
        let f = &*self.inner;
        Ok(f.frobenius(element(f, a)?).enc())
    }

    fn __repr__(&self) -> String {
        format!("Field(q={})", self.inner.q())
    }
}

#[pyclass(name = "Code", module = "hermicode", frozen)]
pub struct PyCode {
    inner: LinearCode,
}

#[pymethods]
impl PyCode {
    /// The cyclic code for (q, m) on the orbit of `base` (encodings (u, v)),
    /// or of the canonical base point.
    #[new]
    #[pyo3(signature = (q, m, base = None))]
    fn new(q: u32, m: usize, base: Option<(u32, u32)>) -> PyResult<Self> {
        let curve = HermitianCurve::with_q(q).map_err(py_err)?;
        let spec = match base {
            None => curve.canonical_orbit_spec(),
            Some((u, v)) => {
                let f = curve.field();
                OrbitSpec::new(f, element(f, u)?, element(f, v)?).map_err(py_err)?
            }
        };
        Ok(PyCode {
            inner: LinearCode::build(&curve, m, spec).map_err(py_err)?,
        })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn designed_distance(&self) -> usize {
        self.inner.designed_distance()
    }

    #[getter]
    fn base_point(&self) -> (u32, u32) {
        let s = self.inner.spec();
        (s.u.enc(), s.v.enc())
    }

    #[getter]
    fn tau(&self) -> u32 {
        self.inner.spec().tau.enc()
    }

    fn field(&self) -> PyField {
        PyField {
            inner: self.inner.field().clone(),
        }
    }

    fn generator(&self) -> Vec<Vec<u32>> {
        self.inner.export().rows
    }

    fn encode(&self, msg: Vec<u32>) -> PyResult<Vec<u32>> {
        let f = self.inner.field();
        let msg = msg
            .into_iter()
            .map(|a| element(f, a))
            .collect::<PyResult<Vec<_>>>()?;
        let cw = self.inner.encode(&msg).map_err(py_err)?;
        Ok(cw.symbols.into_iter().map(FieldElement::enc).collect())
    }

    fn is_cyclic(&self) -> bool {
        self.inner.check_cyclic()
    }

    /// {weight: count}; `method` is "exhaustive", "reduced" or "auto".
    #[pyo3(signature = (method = "auto", jobs = 1))]
    fn weight_enumerator(&self, py: Python<'_>, method: &str, jobs: usize) -> PyResult<BTreeMap<usize, u64>> {
        let method: Method = method.parse().map_err(PyValueError::new_err)?;
        let code = &self.inner;
        let we = py
            .detach(|| weights::weight_enumerator(code, method, jobs))
            .map_err(py_err)?;
        Ok(we.counts)
    }

    #[pyo3(signature = (jobs = 1))]
    fn min_distance(&self, py: Python<'_>, jobs: usize) -> PyResult<usize> {
        let code = &self.inner;
        py.detach(|| weights::min_distance(code, jobs)).map_err(py_err)
    }

    /// Codeword of weight n − (m − 2)(q + 1); needs m ≥ 3.
    fn witness(&self) -> PyResult<Vec<u32>> {
        let (_, cw) = weights::upper_bound_witness(&self.inner).map_err(py_err)?;
        Ok(cw.symbols.into_iter().map(FieldElement::enc).collect())
    }

    fn export_json(&self) -> String {
        serde_json::to_string(&self.inner.export()).expect("serializable")
    }

    fn __repr__(&self) -> String {
        format!("Code(q={}, m={}, n={}, k={})", self.q(), self.m(), self.n(), self.k())
    }
}

/// Affine points (x, y) followed by the point at infinity, as projective
/// encoding triples.
#[pyfunction]
fn points(q: u32) -> PyResult<Vec<[u32; 3]>> {
    let curve = HermitianCurve::with_q(q).map_err(py_err)?;
    Ok(curve.points().iter().map(|p| p.encs()).collect())
}

/// Claim reports for one q as a list of dicts.
#[pyfunction]
#[pyo3(signature = (q, m = None, jobs = 1))]
fn verify<'py>(py: Python<'py>, q: u32, m: Option<usize>, jobs: usize) -> PyResult<Bound<'py, PyAny>> {
    let claims = py
        .detach(|| Verifier::new(jobs).suite(q, m))
        .map_err(py_err)?;
    json_loads(py, &serde_json::to_string(&claims).expect("serializable"))
}

/// The deterministic consolidated report as a dict.
#[pyfunction]
#[pyo3(signature = (jobs = 1))]
fn report<'py>(py: Python<'py>, jobs: usize) -> PyResult<Bound<'py, PyAny>> {
    let value = py
        .detach(|| hermicode::cli::report_all(jobs))
        .map_err(py_err)?;
    json_loads(py, &value.to_string())
}

#[pymodule]
#[pyo3(name = "hermicode")]
fn hermicode_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(points, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    Ok(())
}
