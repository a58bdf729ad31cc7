//! Batch commands behind the `meritfuse` binary. Each command reads its
//! inputs, writes its outputs and returns what it wrote, so the same code
//! path is exercised by the binary and by tests.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fusion::{fuse, normalize, predict, predict_matrix, WeightVector};
use crate::objective::{
    self, confusion, metrics, FusionObjective, MetricsReport, ObjectiveVariant, POSITIVE_CLASS,
};
use crate::optimizers::{optimize, Method, OptResult, OptimizerConfig};
use crate::scoreio::{
    align, load_labels, load_scores, write_report, write_scores, FusionDataset, LabelVector,
    Manifest, ReportRow,
};
use crate::textprep::{self, IdentityTranslator};

/// Command-line values that take precedence over the manifest.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub method: Option<Method>,
    pub seed: Option<u64>,
    pub grid_step: Option<f64>,
    pub objective: Option<ObjectiveVariant>,
    pub out: Option<PathBuf>,
}

impl Overrides {
    fn apply(&self, manifest: &mut Manifest) {
        if let Some(m) = self.method {
            manifest.method = Some(m.name().to_string());
        }
        if let Some(s) = self.seed {
            manifest.seed = Some(s);
        }
        if let Some(g) = self.grid_step {
            manifest.grid_step = g;
        }
        if let Some(o) = self.objective {
            manifest.objective = o;
        }
        if let Some(out) = &self.out {
            manifest.output = out.clone();
        }
    }
}

/// Positive-class metrics of fused predictions on `dataset` under `weights`.
pub fn test_metrics(dataset: &FusionDataset, weights: &WeightVector) -> Result<MetricsReport> {
    let pred = predict(&fuse(dataset, weights)?);
    metrics(confusion(&pred, dataset.labels(), POSITIVE_CLASS)?)
}

/// Per-model metrics for each score file against one label file.
pub fn evaluate(scores: &[PathBuf], labels_path: &Path, out: Option<&Path>) -> Result<Vec<ReportRow>> {
    if scores.is_empty() {
        return Err(Error::Usage("at least one --scores file is required".into()));
    }
    let labels = load_labels(labels_path)?;
    let mut rows = Vec::with_capacity(scores.len());
    for path in scores {
        let matrix = load_scores(path)?;
        let model_id = matrix.model_id().to_string();
        let dataset = align(vec![matrix], labels.clone())?;
        let pred = predict_matrix(&dataset.matrices()[0]);
        let report = metrics(confusion(&pred, dataset.labels(), POSITIVE_CLASS)?)?;
        let unit = WeightVector::new(vec![1.0])?;
        let error = objective::cumulative_error(&dataset, &unit, ObjectiveVariant::FusedAccuracy)?;
        rows.push(ReportRow {
            method: model_id,
            metrics: report,
            objective: error,
            weights: vec![1.0],
        });
    }
    if let Some(out) = out {
        write_report(&rows, out)?;
    }
    Ok(rows)
}

/// Parses `w1,w2,...`.
pub fn parse_weights(text: &str) -> Result<WeightVector> {
    let values = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Usage(format!("weight `{s}` is not a number")))
        })
        .collect::<Result<Vec<_>>>()?;
    WeightVector::new(values)
}

/// Fuses score files under raw `weights` and writes the fused table. Rows
/// follow the label file when given, otherwise the first score file.
pub fn fuse_files(
    scores: &[PathBuf],
    labels_path: Option<&Path>,
    weights: &WeightVector,
    out: &Path,
) -> Result<()> {
    let matrices = scores.iter().map(load_scores).collect::<Result<Vec<_>>>()?;
    let labels = match labels_path {
        Some(p) => load_labels(p)?,
        None => {
            let first = matrices
                .first()
                .ok_or_else(|| Error::Usage("at least one --scores file is required".into()))?;
            LabelVector::new(first.sample_ids().to_vec(), vec![0; first.num_samples()])?
        }
    };
    let dataset = align(matrices, labels)?;
    let fused = fuse(&dataset, &normalize(weights)?)?;
    write_scores(&fused.to_score_matrix(), out)
}

/// Searches weights on the validation split and scores them on the test split.
pub fn run_method(
    method: Method,
    manifest: &Manifest,
    validation: &FusionDataset,
    test: &FusionDataset,
) -> Result<(OptResult, ReportRow)> {
    let cfg: OptimizerConfig = manifest.optimizer_config(method)?;
    let objective = FusionObjective::new(validation, manifest.objective)?;
    let result = optimize(&objective, validation.num_models(), &cfg)?;
    let report = test_metrics(test, &result.best_weights)?;
    let row = ReportRow {
        method: method.name().to_string(),
        metrics: report,
        objective: result.best_error,
        weights: result.best_weights.as_slice().to_vec(),
    };
    Ok((result, row))
}

fn load_manifest(path: &Path, overrides: &Overrides) -> Result<Manifest> {
    let mut manifest = Manifest::load(path)?;
    overrides.apply(&mut manifest);
    Ok(manifest)
}

/// Where `optimize` writes its JSON result next to the report CSV.
pub fn result_json_path(report: &Path) -> PathBuf {
    let json = report.with_extension("json");
    if json == report {
        report.with_extension("result.json")
    } else {
        json
    }
}

/// Runs the manifest's method; writes the report CSV and the result JSON.
pub fn optimize_manifest(path: &Path, overrides: &Overrides) -> Result<(OptResult, ReportRow)> {
    let manifest = load_manifest(path, overrides)?;
    let method = manifest
        .method()?
        .ok_or_else(|| Error::Usage("no method given in the manifest or via --method".into()))?;
    let (validation, test) = manifest.load_splits()?;
    let (result, row) = run_method(method, &manifest, &validation, &test)?;
    write_report(std::slice::from_ref(&row), &manifest.output)?;
    result.write_json(result_json_path(&manifest.output))?;
    Ok((result, row))
}

/// Runs all six methods with the manifest's shared seed and writes one
/// report in fixed method order.
pub fn compare_manifest(path: &Path, overrides: &Overrides) -> Result<Vec<ReportRow>> {
    let manifest = load_manifest(path, overrides)?;
    if manifest.seed.is_none() {
        return Err(Error::Usage("compare runs stochastic methods and needs a seed".into()));
    }
    let (validation, test) = manifest.load_splits()?;
    let rows = Method::ALL
        .par_iter()
        .map(|&m| {
            run_method(m, &manifest, &validation, &test)
                .map(|(_, row)| row)
                .map_err(|e| Error::MethodFailed {
                    method: m.name().to_string(),
                    source: Box::new(e),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    write_report(&rows, &manifest.output)?;
    Ok(rows)
}

#[derive(Debug, Clone)]
pub enum PrepAction {
    Clean,
    Balance { seed: u64 },
    Augment { source: String, target: String },
}

/// Applies one text preparation step to a JSON Lines file.
pub fn prep(action: &PrepAction, input: &Path, out: &Path) -> Result<usize> {
    let samples = textprep::read_samples(input)?;
    let result = match action {
        PrepAction::Clean => textprep::clean_samples(&samples),
        PrepAction::Balance { seed } => textprep::upsample(&samples, *seed)?,
        PrepAction::Augment { source, target } => {
            textprep::augment_backtranslate(&samples, &IdentityTranslator, source, target)?
        }
    };
    textprep::write_samples(&result, out)?;
    Ok(result.len())
}
