//! Python bindings: parameters, characters, irreps, Ext dimensions and the
//! verification suites. Structured results come back as Python dicts.

use pyo3::exceptions::{PyNotImplementedError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde_json::Value;

use divext::chars::{self, RootOfUnity};
use divext::cli::config::{parse_kv, RunConfig, DEFAULT_CONFIG};
use divext::cli::verify::{run_suite, Suite};
use divext::cohomx::{self, BaseCase};
use divext::gf;
use divext::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::Unsupported(_) => PyNotImplementedError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn from_py(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    let s: String = obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&s).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn alpha(s: &str) -> PyResult<RootOfUnity> {
    s.parse().map_err(err)
}

#[pyclass(frozen, eq, skip_from_py_object, module = "divext")]
#[derive(Clone, PartialEq)]
struct Params {
    inner: gf::Params,
}

#[pymethods]
impl Params {
    #[new]
    #[pyo3(signature = (p, f, d, r=1))]
    fn new(p: u64, f: u32, d: u32, r: u32) -> PyResult<Self> {
        Ok(Params { inner: gf::Params::new(p, f, d, r).map_err(err)? })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p
    }
    #[getter]
    fn f(&self) -> u32 {
        self.inner.f
    }
    #[getter]
    fn d(&self) -> u32 {
        self.inner.d
    }
    #[getter]
    fn r(&self) -> u32 {
        self.inner.r
    }
    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    fn __repr__(&self) -> String {
        let p = self.inner;
        format!("Params(p={}, f={}, d={}, r={})", p.p, p.f, p.d, p.r)
    }
}

#[pyclass(frozen, eq, skip_from_py_object, module = "divext")]
#[derive(Clone, PartialEq)]
struct Character {
    inner: chars::Character,
}

#[pymethods]
impl Character {
    /// Level `a`, exponent `M` on `k_D^×` and `α = "u/n"` for the uniformizer.
    #[new]
    #[pyo3(signature = (params, a, m, alpha="0/1"))]
    fn new(params: &Params, a: u32, m: u64, alpha: &str) -> PyResult<Self> {
        let inner = chars::Character::new(params.inner, a, self::alpha(alpha)?, m).map_err(err)?;
        Ok(Character { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (params, a=1))]
    fn trivial(params: &Params, a: u32) -> Self {
        Character { inner: chars::Character::trivial(params.inner, a) }
    }

    #[staticmethod]
    #[pyo3(signature = (params, i=0, dualized=false))]
    fn eta(params: &Params, i: i64, dualized: bool) -> Self {
        Character { inner: chars::eta_character(params.inner, i, dualized) }
    }

    #[getter]
    fn level(&self) -> u32 {
        self.inner.level()
    }
    #[getter]
    fn exponent(&self) -> u64 {
        self.inner.exponent()
    }
    #[getter]
    fn alpha(&self) -> String {
        self.inner.alpha().to_string()
    }
    fn is_trivial(&self) -> bool {
        self.inner.is_trivial()
    }
    fn order(&self) -> u32 {
        self.inner.order()
    }

    fn restrict(&self, a: u32) -> PyResult<Self> {
        Ok(Character { inner: self.inner.restrict(a).map_err(err)? })
    }
    fn conjugate(&self, i: i64) -> Self {
        Character { inner: self.inner.conjugate(i) }
    }
    fn tensor(&self, other: &Character) -> PyResult<Self> {
        Ok(Character { inner: self.inner.tensor(&other.inner).map_err(err)? })
    }
    fn dual(&self) -> Self {
        Character { inner: self.inner.dual() }
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(frozen, skip_from_py_object, module = "divext")]
#[derive(Clone)]
struct Irrep {
    inner: chars::Irrep,
}

#[pymethods]
impl Irrep {
    #[new]
    #[pyo3(signature = (params, a, m, alpha="0/1"))]
    fn new(params: &Params, a: u32, m: u64, alpha: &str) -> PyResult<Self> {
        let inner = chars::Irrep::from_parts(params.inner, a, m, self::alpha(alpha)?).map_err(err)?;
        Ok(Irrep { inner })
    }

    #[staticmethod]
    fn trivial(params: &Params) -> Self {
        Irrep { inner: chars::Irrep::trivial(params.inner) }
    }

    #[staticmethod]
    fn from_dict(params: &Params, obj: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Irrep { inner: chars::Irrep::from_json(params.inner, &from_py(obj)?).map_err(err)? })
    }

    #[getter]
    fn level(&self) -> u32 {
        self.inner.level()
    }
    #[getter]
    fn dim(&self) -> u32 {
        self.inner.dim()
    }
    #[getter]
    fn chi(&self) -> Character {
        Character { inner: self.inner.chi().clone() }
    }
    #[getter]
    fn kappa(&self) -> Character {
        Character { inner: self.inner.kappa().clone() }
    }
    fn canonical(&self) -> Self {
        Irrep { inner: self.inner.canonical() }
    }
    fn dual(&self) -> Self {
        Irrep { inner: self.inner.dual() }
    }
    fn twist(&self, rho: &Character) -> PyResult<Self> {
        Ok(Irrep { inner: self.inner.twist(&rho.inner).map_err(err)? })
    }

    fn __eq__(&self, other: &Irrep) -> bool {
        chars::irrep_iso(&self.inner, &other.inner)
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    fn __repr__(&self) -> String {
        let c = self.inner.canonical();
        format!("Irrep(a={}, M={}, alpha={})", c.level(), c.chi().exponent(), c.kappa().alpha())
    }
}

fn case(params: &gf::Params, s: &str) -> PyResult<BaseCase> {
    BaseCase::parse(s, params.f).map_err(err)
}

/// `Ext^n_{D^×}(π, π')` as a dict with the total, its rendering and the summands.
#[pyfunction]
#[pyo3(signature = (pi, pi2, n=1, case="padic"))]
fn ext<'py>(py: Python<'py>, pi: &Irrep, pi2: &Irrep, n: u32, case: &str) -> PyResult<Bound<'py, PyAny>> {
    let c = self::case(&pi.inner.chi().params(), case)?;
    let r = cohomx::ext_degree(&pi.inner, &pi2.inner, n, c).map_err(err)?;
    to_py(py, &r.to_json())
}

/// Multiplicity of the trivial character in `H^1(I_1) ⊗ c`, or in its dual.
#[pyfunction]
#[pyo3(signature = (c, dualized=false, case="padic"))]
fn mult_trivial_h1<'py>(py: Python<'py>, c: &Character, dualized: bool, case: &str) -> PyResult<Bound<'py, PyAny>> {
    let bc = self::case(&c.inner.params(), case)?;
    let m = cohomx::mult_trivial_h1(&c.inner, dualized, bc);
    let d = PyDict::new(py);
    d.set_item("finite", m.finite)?;
    d.set_item("h1F_mult", m.h1f_mult)?;
    d.set_item("rendered", m.render())?;
    Ok(d.into_any())
}

/// The same multiplicity by solving for invariants in an explicit basis.
#[pyfunction]
#[pyo3(signature = (c, dualized=false, cap=gf::DEFAULT_TABLE_CAP))]
fn invariants_oracle(c: &Character, dualized: bool, cap: u64) -> PyResult<u64> {
    cohomx::invariants_oracle(&c.inner, dualized, cap).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (params, alphas=vec!["0/1".to_string()]))]
fn canonical_irreps(params: &Params, alphas: Vec<String>) -> PyResult<Vec<Irrep>> {
    let alphas = alphas.iter().map(|s| alpha(s)).collect::<PyResult<Vec<_>>>()?;
    let irreps = chars::canonical_irreps(params.inner, &alphas).map_err(err)?;
    Ok(irreps.into_iter().map(|inner| Irrep { inner }).collect())
}

/// Runs a verification suite; `overrides` uses the `key = value` config syntax.
#[pyfunction]
#[pyo3(signature = (suite="all", overrides=""))]
fn verify<'py>(py: Python<'py>, suite: &str, overrides: &str) -> PyResult<Bound<'py, PyAny>> {
    let s = Suite::parse(suite).map_err(err)?;
    let mut entries = parse_kv(DEFAULT_CONFIG).map_err(err)?;
    entries.extend(parse_kv(overrides).map_err(err)?);
    let cfg = RunConfig::from_entries(entries, None, None).map_err(err)?;
    let report = py.detach(|| run_suite(&cfg, s)).map_err(err)?;
    to_py(py, &serde_json::to_value(&report).map_err(|e| PyValueError::new_err(e.to_string()))?)
}

#[pymodule]
fn divext_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Params>()?;
    m.add_class::<Character>()?;
    m.add_class::<Irrep>()?;
    m.add_function(wrap_pyfunction!(ext, m)?)?;
    m.add_function(wrap_pyfunction!(mult_trivial_h1, m)?)?;
    m.add_function(wrap_pyfunction!(invariants_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_irreps, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
