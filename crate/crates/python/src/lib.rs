//! Python bindings. Structures cross the boundary as JSON text in the same
//! format the `dlens` command line tool reads and writes; reports come back
//! as plain Python dictionaries.

use std::collections::BTreeMap;
use std::sync::Arc;

use dlens_core::classify::classify;
use dlens_core::fincat::{comprehensive_factorization, to_dot, FinCat, FinFunctor, PushoutBound, RawCategory};
use dlens_core::gen::{self, GenConfig, LensShape};
use dlens_core::idx::{elements, fibres, product_idx, coproduct_idx, pullback_idx, pushforward_idx, IndexedSmf};
use dlens_core::lens::{epi_mono_factorization, ioo_ff_factorization, is_split_opfibration, DeltaLens, OpfibMode};
use dlens_core::smult::{compose_smf, Smf};
use dlens_core::{laws, ValidationReport};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

create_exception!(dlens, UndecidedError, PyException, "A bounded computation could not reach a verdict.");

fn py_err(e: dlens_core::Error) -> PyErr {
    match e {
        dlens_core::Error::Undecided(_) => UndecidedError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse<T: DeserializeOwned>(text: &str) -> PyResult<T> {
    serde_json::from_str(text).map_err(|e| PyValueError::new_err(format!("malformed JSON: {e}")))
}

fn dump<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (dump(value),))
}

fn report<'py>(py: Python<'py>, r: &ValidationReport) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, r)
}

/// A finite category given by its composition table.
#[pyclass(name = "Category", frozen, module = "dlens")]
pub struct PyCategory {
    inner: Arc<FinCat>,
}

#[pymethods]
impl PyCategory {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let raw: RawCategory = parse(text)?;
        Ok(PyCategory { inner: Arc::new(FinCat::from_raw(&raw).map_err(py_err)?) })
    }

    /// One of the built-in categories: `terminal`, `interval`, `discrete:N`.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        let cat = match name.split_once(':') {
            None if name == "terminal" => gen::catalog::terminal(),
            None if name == "interval" => gen::catalog::interval(),
            Some(("discrete", n)) => {
                gen::catalog::discrete(n.parse().map_err(|_| PyValueError::new_err(format!("bad size `{n}`")))?)
            }
            _ => return Err(PyValueError::new_err(format!("unknown category `{name}`"))),
        };
        Ok(PyCategory { inner: Arc::new(cat) })
    }

    fn to_json(&self) -> String {
        dump(&self.inner.to_raw())
    }

    fn objects(&self) -> Vec<String> {
        self.inner.objects().map(|o| self.inner.obj_name(o).to_owned()).collect()
    }

    fn morphisms(&self) -> Vec<String> {
        self.inner.morphisms().map(|m| self.inner.mor_name(m).to_owned()).collect()
    }

    fn to_dot(&self, title: &str) -> String {
        to_dot(&self.inner, title, |_| None)
    }

    fn __len__(&self) -> usize {
        self.inner.morphisms().len()
    }

    fn __repr__(&self) -> String {
        format!("Category({} objects, {} morphisms)", self.inner.objects().len(), self.inner.morphisms().len())
    }
}

/// A functor between finite categories.
#[pyclass(name = "Functor", frozen, module = "dlens")]
pub struct PyFunctor {
    inner: FinFunctor,
}

#[pymethods]
impl PyFunctor {
    /// Parses a functor; `dom` and `cod` fill in endpoints missing from the JSON.
    #[staticmethod]
    #[pyo3(signature = (text, dom=None, cod=None))]
    fn from_json(text: &str, dom: Option<&PyCategory>, cod: Option<&PyCategory>) -> PyResult<Self> {
        let mut raw: dlens_core::fincat::RawFunctor = parse(text)?;
        let fill = |c: Option<&PyCategory>| c.map(|c| dlens_core::fincat::CatRef::Inline(c.inner.to_raw()));
        if raw.dom.is_none() {
            raw.dom = fill(dom);
        }
        if raw.cod.is_none() {
            raw.cod = fill(cod);
        }
        Ok(PyFunctor { inner: FinFunctor::from_raw(&raw, &BTreeMap::new()).map_err(py_err)? })
    }

    #[staticmethod]
    fn identity(cat: &PyCategory) -> Self {
        PyFunctor { inner: FinFunctor::identity(cat.inner.clone()) }
    }

    fn to_json(&self) -> String {
        dump(&self.inner.to_raw())
    }

    fn dom(&self) -> PyCategory {
        PyCategory { inner: self.inner.dom().clone() }
    }

    fn cod(&self) -> PyCategory {
        PyCategory { inner: self.inner.cod().clone() }
    }

    fn then(&self, next: &PyFunctor) -> PyResult<Self> {
        Ok(PyFunctor { inner: self.inner.then(&next.inner).map_err(py_err)? })
    }

    fn is_discrete_opfibration(&self) -> bool {
        self.inner.is_discrete_opfibration()
    }

    fn is_identity_on_objects(&self) -> bool {
        self.inner.is_identity_on_objects()
    }

    fn is_isomorphism(&self) -> bool {
        self.inner.is_isomorphism()
    }

    /// `(middle category, initial functor, discrete opfibration)`.
    fn comprehensive_factorization(&self) -> (PyCategory, PyFunctor, PyFunctor) {
        let fac = comprehensive_factorization(&self.inner);
        (PyCategory { inner: fac.mid }, PyFunctor { inner: fac.first }, PyFunctor { inner: fac.second })
    }
}

/// A delta lens: a functor with a chosen lift for each base morphism.
#[pyclass(name = "DeltaLens", frozen, module = "dlens")]
pub struct PyDeltaLens {
    inner: DeltaLens,
}

#[pymethods]
impl PyDeltaLens {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyDeltaLens { inner: DeltaLens::from_raw(&parse(text)?).map_err(py_err)? })
    }

    #[staticmethod]
    fn identity(cat: &PyCategory) -> Self {
        PyDeltaLens { inner: DeltaLens::identity(cat.inner.clone()) }
    }

    /// The projection `a × b -> b`.
    #[staticmethod]
    fn projection(a: &PyCategory, b: &PyCategory) -> Self {
        PyDeltaLens { inner: dlens_core::lens::projection_lens(&a.inner, &b.inner) }
    }

    fn to_json(&self) -> String {
        dump(&self.inner.to_raw())
    }

    fn to_dot(&self, title: &str) -> String {
        self.inner.to_dot(title)
    }

    fn functor(&self) -> PyFunctor {
        PyFunctor { inner: self.inner.functor().clone() }
    }

    fn then(&self, next: &PyDeltaLens) -> PyResult<Self> {
        Ok(PyDeltaLens { inner: self.inner.then(&next.inner).map_err(py_err)? })
    }

    fn fibres(&self) -> PyIndexedSmf {
        PyIndexedSmf { inner: fibres(&self.inner) }
    }

    /// `mode` is one of `opcartesian`, `weakly_opcartesian`, `decalage`.
    #[pyo3(signature = (mode="opcartesian"))]
    fn is_split_opfibration(&self, mode: &str) -> PyResult<bool> {
        let mode: OpfibMode = serde_json::from_value(serde_json::Value::String(mode.to_owned()))
            .map_err(|_| PyValueError::new_err(format!("unknown mode `{mode}`")))?;
        Ok(is_split_opfibration(&self.inner, mode))
    }

    /// `(identity-on-objects functor, fully faithful lens)`.
    fn ioo_ff_factorization(&self) -> (PyFunctor, PyDeltaLens) {
        let fac = ioo_ff_factorization(&self.inner);
        (PyFunctor { inner: fac.first }, PyDeltaLens { inner: fac.second })
    }

    /// `(surjective-on-objects lens, fully faithful injective-on-objects lens)`.
    fn epi_mono_factorization(&self) -> (PyDeltaLens, PyDeltaLens) {
        let fac = epi_mono_factorization(&self.inner);
        (PyDeltaLens { inner: fac.first }, PyDeltaLens { inner: fac.second })
    }
}

/// A split multivalued function between finite sets.
#[pyclass(name = "Smf", frozen, module = "dlens")]
pub struct PySmf {
    inner: Smf,
}

#[pymethods]
impl PySmf {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PySmf { inner: Smf::from_raw(&parse(text)?).map_err(py_err)? })
    }

    fn to_json(&self) -> String {
        dump(&self.inner.to_raw())
    }

    /// Loose composite: `self` first, then `next`.
    fn then(&self, next: &PySmf) -> PyResult<Self> {
        Ok(PySmf { inner: compose_smf(&self.inner, &next.inner).map_err(py_err)? })
    }

    fn __eq__(&self, other: &PySmf) -> bool {
        self.inner == other.inner
    }
}

/// A functor from a finite category into split multivalued functions.
#[pyclass(name = "IndexedSmf", frozen, module = "dlens")]
pub struct PyIndexedSmf {
    inner: IndexedSmf,
}

#[pymethods]
impl PyIndexedSmf {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyIndexedSmf { inner: IndexedSmf::from_raw(&parse(text)?).map_err(py_err)? })
    }

    fn to_json(&self) -> String {
        dump(&self.inner.to_raw())
    }

    fn base(&self) -> PyCategory {
        PyCategory { inner: self.inner.base().clone() }
    }

    /// The category of elements, as a delta lens over the base.
    fn elements(&self) -> PyResult<PyDeltaLens> {
        Ok(PyDeltaLens { inner: elements(&self.inner).map_err(py_err)?.lens })
    }

    /// Class verdicts computed on the indexed data and on its elements lens.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &classify(&self.inner).map_err(py_err)?)
    }

    fn pullback(&self, k: &PyFunctor) -> PyResult<Self> {
        Ok(PyIndexedSmf { inner: pullback_idx(&self.inner, &k.inner).map_err(py_err)? })
    }

    /// Raises `UndecidedError` when the pushout search exceeds its bound.
    #[pyo3(signature = (g, word_bound=None))]
    fn pushforward(&self, g: &PyFunctor, word_bound: Option<usize>) -> PyResult<Self> {
        let mut bound = PushoutBound::from_env();
        if let Some(b) = word_bound {
            bound.word_length = b;
        }
        Ok(PyIndexedSmf { inner: pushforward_idx(&self.inner, &g.inner, bound).map_err(py_err)? })
    }

    fn product(&self, other: &PyIndexedSmf) -> Self {
        PyIndexedSmf { inner: product_idx(&self.inner, &other.inner).object }
    }

    fn coproduct(&self, other: &PyIndexedSmf) -> Self {
        PyIndexedSmf { inner: coproduct_idx(&self.inner, &other.inner).object }
    }
}

/// Validates JSON of any supported kind and returns its violation report.
#[pyfunction]
fn validate<'py>(py: Python<'py>, kind: &str, text: &str) -> PyResult<Bound<'py, PyAny>> {
    let r = match kind {
        "category" => dlens_core::fincat::validate_category(&parse(text)?),
        "functor" => dlens_core::fincat::validate_functor(&parse(text)?, &BTreeMap::new()),
        "lens" => dlens_core::lens::check_delta_lens(&parse(text)?),
        "smf" => dlens_core::smult::validate_raw_smf(&parse(text)?),
        "indexed" => dlens_core::idx::validate_indexed_smf(&parse(text)?),
        _ => return Err(PyValueError::new_err(format!("unknown kind `{kind}`"))),
    };
    report(py, &r)
}

/// Seeded random instances as JSON strings. `kind` is one of `category`,
/// `functor`, `lens`, `dopf`, `indexed`, `smf`.
#[pyfunction]
#[pyo3(signature = (kind, seed=0, count=1, max_objects=None, max_fibre=None))]
fn generate(kind: &str, seed: u64, count: usize, max_objects: Option<usize>, max_fibre: Option<usize>) -> PyResult<Vec<String>> {
    let defaults = GenConfig::default();
    let cfg = GenConfig {
        seed,
        count,
        max_objects: max_objects.unwrap_or(defaults.max_objects),
        max_fibre: max_fibre.unwrap_or(defaults.max_fibre),
        ..defaults
    };
    cfg.check().map_err(py_err)?;
    (0..count)
        .map(|i| {
            let rng = &mut cfg.rng(i);
            Ok(match kind {
                "category" => dump(&gen::random_category(rng, &cfg).to_raw()),
                "functor" => dump(&gen::random_functor_pair(rng, &cfg).to_raw()),
                "lens" => dump(&gen::random_lens(rng, &cfg, LensShape::General).to_raw()),
                "dopf" => dump(&gen::random_lens(rng, &cfg, LensShape::Dopf).to_raw()),
                "indexed" => dump(&gen::random_idx(rng, &cfg, LensShape::General).to_raw()),
                "smf" => dump(&gen::random_smf(rng, cfg.max_fibre).to_raw()),
                _ => return Err(PyValueError::new_err(format!("unknown kind `{kind}`"))),
            })
        })
        .collect()
}

/// Names of the property suites.
#[pyfunction]
fn suites() -> Vec<String> {
    laws::suites().iter().map(|s| s.name.to_owned()).collect()
}

/// Runs one property suite and returns its outcome.
#[pyfunction]
#[pyo3(signature = (name, seed=0, count=100))]
fn check_laws<'py>(py: Python<'py>, name: &str, seed: u64, count: usize) -> PyResult<Bound<'py, PyAny>> {
    let suite = laws::suite(name).ok_or_else(|| PyValueError::new_err(format!("unknown suite `{name}`")))?;
    let cfg = GenConfig { seed, count, ..GenConfig::default() };
    cfg.check().map_err(py_err)?;
    let outcome = py.detach(|| laws::run_suite(&suite, &cfg));
    to_py(py, &outcome)
}

#[pymodule]
fn dlens(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCategory>()?;
    m.add_class::<PyFunctor>()?;
    m.add_class::<PyDeltaLens>()?;
    m.add_class::<PySmf>()?;
    m.add_class::<PyIndexedSmf>()?;
    m.add("UndecidedError", m.py().get_type::<UndecidedError>())?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    m.add_function(wrap_pyfunction!(check_laws, m)?)?;
    Ok(())
}
