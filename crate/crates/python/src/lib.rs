//! Python bindings for the fusion, objective, search and text-preparation
//! operations.

use std::path::PathBuf;

use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use meritfuse_core::fusion::{self, WeightVector};
use meritfuse_core::objective::{self, FusionObjective, MetricsReport, POSITIVE_CLASS};
use meritfuse_core::optimizers::{self, OptimizerConfig, OptimizerParams};
use meritfuse_core::scoreio::{self, LabelVector, ScoreMatrix};
use meritfuse_core::textprep::{self, TextSample};
use meritfuse_core::{cli, Error, FusionDataset, Method, ObjectiveVariant};

create_exception!(meritfuse, MeritfuseError, PyValueError);

fn to_py(e: Error) -> PyErr {
    if e.is_io() {
        PyOSError::new_err(e.to_string())
    } else {
        MeritfuseError::new_err(e.to_string())
    }
}

fn weights(w: Vec<f64>) -> PyResult<WeightVector> {
    WeightVector::new(w).map_err(to_py)
}

fn variant(name: &str) -> PyResult<ObjectiveVariant> {
    name.parse().map_err(to_py)
}

#[pyfunction]
fn normalize(w: Vec<f64>) -> PyResult<Vec<f64>> {
    Ok(fusion::normalize(&weights(w)?).map_err(to_py)?.into_inner())
}

#[pyfunction]
fn equal_weights(models: usize) -> PyResult<Vec<f64>> {
    Ok(fusion::equal_weights(models).map_err(to_py)?.into_inner())
}

/// Harmonic mean of precision and recall; 0 when both are 0.
#[pyfunction]
fn f1(precision: f64, recall: f64) -> f64 {
    MetricsReport::f1_from(precision, recall)
}

#[pyfunction]
fn clean_text(text: &str) -> String {
    textprep::clean_text(text)
}

type SampleTuple = (String, String, usize, String);

fn to_samples(samples: Vec<SampleTuple>) -> Vec<TextSample> {
    samples
        .into_iter()
        .map(|(sample_id, text, label, language)| TextSample {
            sample_id,
            text,
            label,
            language,
        })
        .collect()
}

fn from_samples(samples: Vec<TextSample>) -> Vec<SampleTuple> {
    samples
        .into_iter()
        .map(|s| (s.sample_id, s.text, s.label, s.language))
        .collect()
}

/// Balances classes; samples are `(sample_id, text, label, lang)` tuples.
#[pyfunction]
fn upsample(samples: Vec<SampleTuple>, seed: u64) -> PyResult<Vec<SampleTuple>> {
    textprep::upsample(&to_samples(samples), seed)
        .map(from_samples)
        .map_err(to_py)
}

/// Appends an untranslated copy of every `source` sample tagged `target`.
#[pyfunction]
#[pyo3(signature = (samples, source = "it", target = "en"))]
fn augment(samples: Vec<SampleTuple>, source: &str, target: &str) -> PyResult<Vec<SampleTuple>> {
    textprep::augment_backtranslate(&to_samples(samples), &textprep::IdentityTranslator, source, target)
        .map(from_samples)
        .map_err(to_py)
}

/// Outcome of a weight search.
#[pyclass(name = "OptResult", frozen)]
struct PyOptResult {
    inner: optimizers::OptResult,
}

#[pymethods]
impl PyOptResult {
    #[getter]
    fn method(&self) -> &'static str {
        self.inner.method.name()
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    #[getter]
    fn best_error(&self) -> f64 {
        self.inner.best_error
    }

    #[getter]
    fn best_weights(&self) -> Vec<f64> {
        self.inner.best_weights.as_slice().to_vec()
    }

    #[getter]
    fn evaluations(&self) -> usize {
        self.inner.evaluations
    }

    /// `(evaluation, best_error)` at every improvement.
    #[getter]
    fn trace(&self) -> Vec<(usize, f64)> {
        self.inner.trace.iter().map(|t| (t.evaluation, t.best_error)).collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "OptResult(method='{}', best_error={}, best_weights={:?})",
            self.inner.method,
            self.inner.best_error,
            self.inner.best_weights.as_slice()
        )
    }
}

fn metrics_dict<'py>(py: Python<'py>, r: &MetricsReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("precision", r.precision)?;
    d.set_item("recall", r.recall)?;
    d.set_item("f1", r.f1)?;
    d.set_item("accuracy", r.accuracy)?;
    d.set_item("tp", r.confusion.tp)?;
    d.set_item("fp", r.confusion.fp)?;
    d.set_item("fn", r.confusion.fn_)?;
    d.set_item("tn", r.confusion.tn)?;
    Ok(d)
}

/// Aligned score tables of several models plus ground-truth labels.
#[pyclass(name = "Dataset", frozen)]
struct PyDataset {
    inner: FusionDataset,
}

#[pymethods]
impl PyDataset {
    /// `scores[model][sample][class]`; sample ids default to `"0"`, `"1"`, ...
    #[new]
    #[pyo3(signature = (scores, labels, sample_ids = None, model_ids = None))]
    fn new(
        scores: Vec<Vec<Vec<f64>>>,
        labels: Vec<usize>,
        sample_ids: Option<Vec<String>>,
        model_ids: Option<Vec<String>>,
    ) -> PyResult<Self> {
        let ids = sample_ids.unwrap_or_else(|| (0..labels.len()).map(|i| i.to_string()).collect());
        let names = model_ids.unwrap_or_else(|| (1..=scores.len()).map(|i| format!("model{i}")).collect());
        if names.len() != scores.len() {
            return Err(MeritfuseError::new_err("model_ids and scores differ in length"));
        }
        let matrices = names
            .into_iter()
            .zip(scores)
            .map(|(name, rows)| ScoreMatrix::from_rows(name, ids.clone(), rows))
            .collect::<Result<Vec<_>, _>>()
            .map_err(to_py)?;
        let labels = LabelVector::new(ids, labels).map_err(to_py)?;
        Ok(Self {
            inner: scoreio::align(matrices, labels).map_err(to_py)?,
        })
    }

    /// Reads score CSVs and a label CSV.
    #[staticmethod]
    fn load(score_paths: Vec<PathBuf>, labels_path: PathBuf) -> PyResult<Self> {
        let matrices = score_paths
            .iter()
            .map(scoreio::load_scores)
            .collect::<Result<Vec<_>, _>>()
            .map_err(to_py)?;
        let labels = scoreio::load_labels(labels_path).map_err(to_py)?;
        Ok(Self {
            inner: scoreio::align(matrices, labels).map_err(to_py)?,
        })
    }

    #[getter]
    fn num_models(&self) -> usize {
        self.inner.num_models()
    }

    #[getter]
    fn num_samples(&self) -> usize {
        self.inner.num_samples()
    }

    #[getter]
    fn num_classes(&self) -> usize {
        self.inner.num_classes()
    }

    #[getter]
    fn sample_ids(&self) -> Vec<String> {
        self.inner.sample_ids().to_vec()
    }

    #[getter]
    fn model_ids(&self) -> Vec<String> {
        self.inner.matrices().iter().map(|m| m.model_id().to_string()).collect()
    }

    /// Fused scores under raw weights (normalized first).
    fn fuse(&self, weights: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
        let w = fusion::normalize(&self::weights(weights)?).map_err(to_py)?;
        let f = fusion::fuse(&self.inner, &w).map_err(to_py)?;
        Ok(f.rows().map(<[f64]>::to_vec).collect())
    }

    fn predict(&self, weights: Vec<f64>) -> PyResult<Vec<usize>> {
        let w = fusion::normalize(&self::weights(weights)?).map_err(to_py)?;
        Ok(fusion::predict(&fusion::fuse(&self.inner, &w).map_err(to_py)?).predicted)
    }

    #[pyo3(signature = (weights, objective = "fused_accuracy"))]
    fn cumulative_accuracy(&self, weights: Vec<f64>, objective: &str) -> PyResult<f64> {
        objective::cumulative_accuracy(&self.inner, &self::weights(weights)?, variant(objective)?).map_err(to_py)
    }

    #[pyo3(signature = (weights, objective = "fused_accuracy"))]
    fn cumulative_error(&self, weights: Vec<f64>, objective: &str) -> PyResult<f64> {
        objective::cumulative_error(&self.inner, &self::weights(weights)?, variant(objective)?).map_err(to_py)
    }

    /// Positive-class precision, recall, F1, accuracy and confusion counts.
    fn metrics<'py>(&self, py: Python<'py>, weights: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
        let w = fusion::normalize(&self::weights(weights)?).map_err(to_py)?;
        let r = cli::test_metrics(&self.inner, &w).map_err(to_py)?;
        metrics_dict(py, &r)
    }

    /// Searches weights with one method. `params` is a JSON object in the
    /// manifest's `params` layout.
    #[allow(clippy::too_many_arguments)]
    #[pyo3(signature = (method, seed = 0, objective = "fused_accuracy", grid_step = 0.05, max_evaluations = None, params = None))]
    fn optimize(
        &self,
        py: Python<'_>,
        method: &str,
        seed: u64,
        objective: &str,
        grid_step: f64,
        max_evaluations: Option<usize>,
        params: Option<&str>,
    ) -> PyResult<PyOptResult> {
        let method: Method = method.parse().map_err(to_py)?;
        let mut p: OptimizerParams = match params {
            Some(text) => serde_json::from_str(text).map_err(|e| MeritfuseError::new_err(e.to_string()))?,
            None => OptimizerParams::default(),
        };
        if let Some(n) = max_evaluations {
            p.max_evaluations = n;
        }
        let cfg = OptimizerConfig::new(method, seed).with_params(p).with_grid_step(grid_step);
        let obj = FusionObjective::new(&self.inner, variant(objective)?).map_err(to_py)?;
        let models = self.inner.num_models();
        let inner = py
            .detach(|| optimizers::optimize(&obj, models, &cfg))
            .map_err(to_py)?;
        Ok(PyOptResult { inner })
    }

    fn __repr__(&self) -> String {
        format!(
            "Dataset(models={}, samples={}, classes={})",
            self.inner.num_models(),
            self.inner.num_samples(),
            self.inner.num_classes()
        )
    }
}

/// Runs every method on a manifest and returns the report rows.
#[pyfunction]
#[pyo3(signature = (manifest, seed = None, out = None))]
fn compare<'py>(
    py: Python<'py>,
    manifest: PathBuf,
    seed: Option<u64>,
    out: Option<PathBuf>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let overrides = cli::Overrides {
        seed,
        out,
        ..Default::default()
    };
    let rows = py
        .detach(|| cli::compare_manifest(&manifest, &overrides))
        .map_err(to_py)?;
    rows.iter()
        .map(|row| {
            let d = metrics_dict(py, &row.metrics)?;
            d.set_item("method", &row.method)?;
            d.set_item("objective", row.objective)?;
            d.set_item("weights", row.weights.clone())?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
pub fn meritfuse(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("MeritfuseError", m.py().get_type::<MeritfuseError>())?;
    m.add("POSITIVE_CLASS", POSITIVE_CLASS)?;
    m.add("METHODS", Method::ALL.map(|x| x.name()).to_vec())?;
    m.add_class::<PyDataset>()?;
    m.add_class::<PyOptResult>()?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(equal_weights, m)?)?;
    m.add_function(wrap_pyfunction!(f1, m)?)?;
    m.add_function(wrap_pyfunction!(clean_text, m)?)?;
    m.add_function(wrap_pyfunction!(upsample, m)?)?;
    m.add_function(wrap_pyfunction!(augment, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    Ok(())
}
