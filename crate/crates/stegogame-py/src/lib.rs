//! Python bindings for the stegogame workbench: bit strings, families,
//! generators, schemes, distinguishers, and the game oracles.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use stegogame::bits::{BitString, Format};
use stegogame::detectors::{self, Distinguisher};
use stegogame::error::Error;
use stegogame::game::{
    estimate_advantage, exact_advantage, hoeffding_half_width, prng_advantage,
    secure_hiding_verdict, stego_security_distance, AdvantageReport, GameConfig, KeyMode,
    MessageMode, ThresholdPolicy,
};
use stegogame::prng::Generator;
use stegogame::probsets::{Family, Polynomial};
use stegogame::rng::RandomSource;
use stegogame::schemes::Scheme;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "BitString", frozen)]
#[derive(Clone)]
struct PyBitString {
    inner: BitString,
}

#[pymethods]
impl PyBitString {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyBitString {
            inner: BitString::parse(text, Format::BinaryText).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_hex(text: &str) -> PyResult<Self> {
        Ok(PyBitString {
            inner: BitString::parse(text, Format::HexText).map_err(err)?,
        })
    }

    #[staticmethod]
    fn zeros(length: usize) -> Self {
        PyBitString {
            inner: BitString::zeros(length),
        }
    }

    #[staticmethod]
    fn sample_uniform(length: usize, seed: u64) -> Self {
        let mut rng = RandomSource::from_seed(seed);
        PyBitString {
            inner: BitString::sample_uniform(length, &mut rng),
        }
    }

    fn xor(&self, other: &PyBitString) -> PyResult<Self> {
        Ok(PyBitString {
            inner: self.inner.xor(&other.inner).map_err(err)?,
        })
    }

    fn concat(&self, other: &PyBitString) -> Self {
        PyBitString {
            inner: self.inner.concat(&other.inner),
        }
    }

    fn to_hex(&self) -> PyResult<String> {
        self.inner.render(Format::HexText).map_err(err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("BitString('{}')", self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &PyBitString) -> bool {
        self.inner == other.inner
    }
}

/// Family, scheme, generator, and detector descriptors come in as the
/// same JSON the CLI uses.
fn family_from_json(text: &str) -> PyResult<Family> {
    serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn scheme_from_json(text: &str) -> PyResult<Scheme> {
    let spec: stegogame::experiment::SchemeSpec =
        serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    spec.resolve(None).map_err(err)
}

fn generator_from_json(text: &str) -> PyResult<Generator> {
    serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyclass(name = "Scheme", frozen)]
struct PyScheme {
    inner: Scheme,
}

#[pymethods]
impl PyScheme {
    #[new]
    fn new(descriptor_json: &str) -> PyResult<Self> {
        Ok(PyScheme {
            inner: scheme_from_json(descriptor_json)?,
        })
    }

    fn name(&self) -> String {
        self.inner.name()
    }

    fn message_length(&self, support_len: u64) -> PyResult<u64> {
        self.inner.message_length(support_len).map_err(err)
    }

    fn insert(&self, s: &PyBitString, m: &PyBitString, k: &PyBitString) -> PyResult<PyBitString> {
        Ok(PyBitString {
            inner: self.inner.insert(&s.inner, &m.inner, &k.inner).map_err(err)?,
        })
    }

    fn extract(&self, stego: &PyBitString, k: &PyBitString) -> PyResult<PyBitString> {
        Ok(PyBitString {
            inner: self.inner.extract(&stego.inner, &k.inner).map_err(err)?,
        })
    }

    fn inv_key(&self, k: &PyBitString) -> PyResult<PyBitString> {
        Ok(PyBitString {
            inner: self.inner.inv_key(&k.inner).map_err(err)?,
        })
    }
}

#[pyclass(name = "Family", frozen)]
struct PyFamily {
    inner: Family,
}

#[pymethods]
impl PyFamily {
    #[new]
    fn new(descriptor_json: &str) -> PyResult<Self> {
        Ok(PyFamily {
            inner: family_from_json(descriptor_json)?,
        })
    }

    #[staticmethod]
    fn flagship() -> Self {
        PyFamily {
            inner: stegogame::probsets::flagship_family(),
        }
    }

    fn support_length(&self, n: u64) -> PyResult<u64> {
        self.inner.support_length(n).map_err(err)
    }

    fn sample(&self, n: u64, seed: u64) -> PyResult<PyBitString> {
        let mut rng = RandomSource::from_seed(seed);
        Ok(PyBitString {
            inner: self.inner.sample(n, &mut rng).map_err(err)?,
        })
    }

    /// Enumerated (word, "num/den") pairs.
    fn enumerate(&self, n: u64) -> PyResult<Vec<(String, String)>> {
        Ok(self
            .inner
            .enumerate(n)
            .map_err(err)?
            .into_iter()
            .map(|(w, p)| (w.to_string(), format!("{}/{}", p.numer(), p.denom())))
            .collect())
    }

    fn validate(&self, poly_bound: Vec<f64>, n_max: u64) -> PyResult<String> {
        let report = self.inner.validate(&Polynomial(poly_bound), n_max);
        serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

#[pyclass(name = "Generator", frozen)]
struct PyGenerator {
    inner: Generator,
}

#[pymethods]
impl PyGenerator {
    #[new]
    fn new(descriptor_json: &str) -> PyResult<Self> {
        Ok(PyGenerator {
            inner: generator_from_json(descriptor_json)?,
        })
    }

    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    fn generate(&self, seed: &PyBitString, out_len: usize) -> PyResult<PyBitString> {
        Ok(PyBitString {
            inner: self.inner.generate(&seed.inner, out_len).map_err(err)?,
        })
    }
}

#[pyclass(name = "Distinguisher", frozen)]
struct PyDistinguisher {
    inner: Distinguisher,
}

#[pymethods]
impl PyDistinguisher {
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    fn decide(&self, word: &PyBitString, coin_seed: u64) -> u8 {
        let mut coin = RandomSource::from_seed(coin_seed);
        self.inner.decide(&word.inner, &mut coin)
    }
}

#[pyfunction]
fn make_constant(bit: u8) -> PyDistinguisher {
    PyDistinguisher {
        inner: detectors::make_constant(bit),
    }
}

#[pyfunction]
fn make_suffix_match(target: &PyBitString, alpha: u64) -> PyDistinguisher {
    PyDistinguisher {
        inner: detectors::make_suffix_match(target.inner.clone(), alpha),
    }
}

#[pyfunction]
fn make_chi_square(block: u32, quantile: f64) -> PyResult<PyDistinguisher> {
    Ok(PyDistinguisher {
        inner: detectors::make_chi_square(block, quantile).map_err(err)?,
    })
}

#[pyfunction]
fn make_runs_test(quantile: f64) -> PyResult<PyDistinguisher> {
    Ok(PyDistinguisher {
        inner: detectors::make_runs_test(quantile).map_err(err)?,
    })
}

#[pyfunction]
fn make_alternation(threshold: f64) -> PyResult<PyDistinguisher> {
    Ok(PyDistinguisher {
        inner: detectors::make_alternation(threshold).map_err(err)?,
    })
}

#[pyfunction]
fn make_parity_check() -> PyDistinguisher {
    PyDistinguisher {
        inner: detectors::make_parity_check(),
    }
}

#[pyfunction]
fn builtin_suite(word_len: u64, alpha: u64) -> Vec<PyDistinguisher> {
    detectors::builtin_suite(word_len, alpha, None, 0)
        .into_iter()
        .map(|d| PyDistinguisher { inner: d })
        .collect()
}

fn message_mode(fixed_message: Option<&PyBitString>) -> MessageMode {
    match fixed_message {
        Some(m) => MessageMode::Fixed {
            bits: m.inner.clone(),
        },
        None => MessageMode::Uniform,
    }
}

fn key_mode(fixed_key: Option<&PyBitString>, uniform_key_len: Option<u64>) -> PyResult<KeyMode> {
    match (fixed_key, uniform_key_len) {
        (Some(k), None) => Ok(KeyMode::Fixed {
            bits: k.inner.clone(),
        }),
        (None, Some(len)) => Ok(KeyMode::Uniform { seed_length: len }),
        _ => Err(PyValueError::new_err(
            "give exactly one of fixed_key or uniform_key_len",
        )),
    }
}

fn report_to_dict(py: Python<'_>, r: &AdvantageReport) -> PyResult<PyObject> {
    let dict = pyo3::types::PyDict::new_bound(py);
    dict.set_item("p_stego", r.p_stego)?;
    dict.set_item("p_cover", r.p_cover)?;
    dict.set_item("advantage", r.advantage)?;
    dict.set_item("half_width", r.half_width)?;
    dict.set_item("trials", r.trials)?;
    dict.set_item("exact", r.exact)?;
    dict.set_item(
        "advantage_exact",
        r.advantage_exact
            .as_ref()
            .map(|v| format!("{}/{}", v.numer(), v.denom())),
    )?;
    Ok(dict.into())
}

#[pyfunction]
#[pyo3(signature = (family, scheme, d, n, trials, delta, master_seed, fixed_message=None, fixed_key=None, uniform_key_len=None))]
#[allow(clippy::too_many_arguments)]
fn estimate_game_advantage(
    py: Python<'_>,
    family: &PyFamily,
    scheme: &PyScheme,
    d: &PyDistinguisher,
    n: u64,
    trials: u64,
    delta: f64,
    master_seed: u64,
    fixed_message: Option<&PyBitString>,
    fixed_key: Option<&PyBitString>,
    uniform_key_len: Option<u64>,
) -> PyResult<PyObject> {
    let cfg = GameConfig {
        family: &family.inner,
        scheme: &scheme.inner,
        n,
        message_mode: message_mode(fixed_message),
        key_mode: key_mode(fixed_key, uniform_key_len)?,
        trials,
        delta,
    };
    let r = estimate_advantage(&cfg, &d.inner, master_seed).map_err(err)?;
    report_to_dict(py, &r)
}

#[pyfunction]
#[pyo3(signature = (family, scheme, d, n, fixed_message=None, fixed_key=None, uniform_key_len=None))]
fn exact_game_advantage(
    py: Python<'_>,
    family: &PyFamily,
    scheme: &PyScheme,
    d: &PyDistinguisher,
    n: u64,
    fixed_message: Option<&PyBitString>,
    fixed_key: Option<&PyBitString>,
    uniform_key_len: Option<u64>,
) -> PyResult<PyObject> {
    let cfg = GameConfig {
        family: &family.inner,
        scheme: &scheme.inner,
        n,
        message_mode: message_mode(fixed_message),
        key_mode: key_mode(fixed_key, uniform_key_len)?,
        trials: 100,
        delta: 0.01,
    };
    let r = exact_advantage(&cfg, &d.inner).map_err(err)?;
    report_to_dict(py, &r)
}

/// Exact total-variation distance between the stego-content and cover
/// distributions, as a "num/den" string.
#[pyfunction]
#[pyo3(signature = (family, scheme, key, n, fixed_message=None))]
fn stego_security_tv_distance(
    family: &PyFamily,
    scheme: &PyScheme,
    key: &PyBitString,
    n: u64,
    fixed_message: Option<&PyBitString>,
) -> PyResult<String> {
    let tv = stego_security_distance(
        &family.inner,
        &scheme.inner,
        &key.inner,
        &message_mode(fixed_message),
        n,
    )
    .map_err(err)?;
    Ok(format!("{}/{}", tv.numer(), tv.denom()))
}

#[pyfunction]
fn prng_game_advantage(
    py: Python<'_>,
    g: &PyGenerator,
    d: &PyDistinguisher,
    seed_len: u64,
    out_len: u64,
    trials: u64,
    delta: f64,
    master_seed: u64,
) -> PyResult<PyObject> {
    let r = prng_advantage(&g.inner, &d.inner, seed_len, out_len, trials, delta, master_seed)
        .map_err(err)?;
    report_to_dict(py, &r)
}

/// Verdict string for an (advantage, half_width) pair under the
/// 1/p(i) + 1/p(|k|) threshold.
#[pyfunction]
fn hiding_verdict(
    advantage: f64,
    half_width: f64,
    poly: Vec<f64>,
    index: u64,
    key_len: u64,
) -> PyResult<String> {
    let policy = ThresholdPolicy::new(Polynomial(poly)).map_err(err)?;
    let report = AdvantageReport {
        p_stego: 0.0,
        p_cover: 0.0,
        advantage,
        half_width,
        trials: 0,
        exact: half_width == 0.0,
        p_stego_exact: None,
        p_cover_exact: None,
        advantage_exact: None,
    };
    Ok(secure_hiding_verdict(&report, &policy, index, key_len).to_string())
}

#[pyfunction]
fn hoeffding(delta: f64, trials: u64) -> f64 {
    hoeffding_half_width(delta, trials)
}

#[pymodule]
fn stegogame_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBitString>()?;
    m.add_class::<PyFamily>()?;
    m.add_class::<PyScheme>()?;
    m.add_class::<PyGenerator>()?;
    m.add_class::<PyDistinguisher>()?;
    m.add_function(wrap_pyfunction!(make_constant, m)?)?;
    m.add_function(wrap_pyfunction!(make_suffix_match, m)?)?;
    m.add_function(wrap_pyfunction!(make_chi_square, m)?)?;
    m.add_function(wrap_pyfunction!(make_runs_test, m)?)?;
    m.add_function(wrap_pyfunction!(make_alternation, m)?)?;
    m.add_function(wrap_pyfunction!(make_parity_check, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_suite, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_game_advantage, m)?)?;
    m.add_function(wrap_pyfunction!(exact_game_advantage, m)?)?;
    m.add_function(wrap_pyfunction!(stego_security_tv_distance, m)?)?;
    m.add_function(wrap_pyfunction!(prng_game_advantage, m)?)?;
    m.add_function(wrap_pyfunction!(hiding_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(hoeffding, m)?)?;
    Ok(())
}
