//! Weighted linear late fusion of per-model class scores, and the argmax
//! decision rule applied to the fused table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scoreio::{FusionDataset, ScoreMatrix};

/// Tolerance on the sum of a normalized weight vector.
pub const NORMALIZED_TOLERANCE: f64 = 1e-12;

/// Nonnegative per-model weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        check_raw(&weights)?;
        Ok(Self(weights))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn is_normalized(&self) -> bool {
        (self.0.iter().sum::<f64>() - 1.0).abs() <= NORMALIZED_TOLERANCE
    }
}

impl From<WeightVector> for Vec<f64> {
    fn from(w: WeightVector) -> Self {
        w.0
    }
}

fn check_raw(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidWeights("no weights".into()));
    }
    if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
        return Err(Error::InvalidWeights(format!("entry {w} is not a nonnegative number")));
    }
    if weights.iter().all(|&w| w == 0.0) {
        return Err(Error::InvalidWeights("all weights are zero".into()));
    }
    Ok(())
}

/// Scales `raw` onto the unit simplex. A vector whose sum is already within
/// [`NORMALIZED_TOLERANCE`] of 1 is returned unchanged, so normalization is
/// idempotent bit for bit.
pub fn normalize(raw: &WeightVector) -> Result<WeightVector> {
    normalize_slice(raw.as_slice()).map(WeightVector)
}

pub(crate) fn normalize_slice(raw: &[f64]) -> Result<Vec<f64>> {
    check_raw(raw)?;
    let sum: f64 = raw.iter().sum();
    if (sum - 1.0).abs() <= NORMALIZED_TOLERANCE {
        return Ok(raw.to_vec());
    }
    Ok(raw.iter().map(|w| w / sum).collect())
}

/// `(1/M, ..., 1/M)`.
pub fn equal_weights(models: usize) -> Result<WeightVector> {
    if models == 0 {
        return Err(Error::InvalidWeights("model count must be at least 1".into()));
    }
    Ok(WeightVector(vec![1.0 / models as f64; models]))
}

/// Fused class scores, one row per sample.
#[derive(Debug, Clone, PartialEq)]
pub struct FusedScores {
    sample_ids: Vec<String>,
    classes: usize,
    fused: Vec<f64>,
}

impl FusedScores {
    pub fn sample_ids(&self) -> &[String] {
        &self.sample_ids
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.fused[i * self.classes..(i + 1) * self.classes]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.fused.chunks_exact(self.classes)
    }

    /// View as a score matrix with model id `fused`, for writing.
    pub fn to_score_matrix(&self) -> ScoreMatrix {
        ScoreMatrix::from_parts_unchecked(
            "fused".into(),
            self.sample_ids.clone(),
            self.classes,
            self.fused.clone(),
        )
    }
}

/// Predicted class per sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predictions {
    pub sample_ids: Vec<String>,
    pub predicted: Vec<usize>,
}

pub(crate) fn check_fusion_weights(dataset: &FusionDataset, w: &[f64]) -> Result<()> {
    if w.len() != dataset.num_models() {
        return Err(Error::LengthMismatch {
            expected: dataset.num_models(),
            found: w.len(),
        });
    }
    check_raw(w)?;
    let sum: f64 = w.iter().sum();
    if (sum - 1.0).abs() > NORMALIZED_TOLERANCE {
        return Err(Error::InvalidWeights(format!("weights sum to {sum}, expected 1")));
    }
    Ok(())
}

/// Writes `sum_n w[n] * scores_n[i]` into `out`.
#[inline]
pub(crate) fn fuse_row(matrices: &[ScoreMatrix], i: usize, w: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|v| *v = 0.0);
    for (m, &wn) in matrices.iter().zip(w) {
        for (o, &p) in out.iter_mut().zip(m.row(i)) {
            *o += wn * p;
        }
    }
}

/// Index of the largest entry; ties go to the lowest index.
#[inline]
pub(crate) fn argmax(row: &[f64]) -> usize {
    let mut best = 0;
    for (k, &v) in row.iter().enumerate().skip(1) {
        if v > row[best] {
            best = k;
        }
    }
    best
}

/// Linear combination of the model score tables under normalized weights.
pub fn fuse(dataset: &FusionDataset, w: &WeightVector) -> Result<FusedScores> {
    check_fusion_weights(dataset, w.as_slice())?;
    let classes = dataset.num_classes();
    let n = dataset.num_samples();
    let mut fused = vec![0.0; n * classes];
    for (i, out) in fused.chunks_exact_mut(classes).enumerate() {
        fuse_row(dataset.matrices(), i, w.as_slice(), out);
    }
    Ok(FusedScores {
        sample_ids: dataset.sample_ids().to_vec(),
        classes,
        fused,
    })
}

pub fn predict(f: &FusedScores) -> Predictions {
    Predictions {
        sample_ids: f.sample_ids.clone(),
        predicted: f.rows().map(argmax).collect(),
    }
}

/// Predictions of a single score matrix, as if it were fused with weight 1.
pub fn predict_matrix(m: &ScoreMatrix) -> Predictions {
    Predictions {
        sample_ids: m.sample_ids().to_vec(),
        predicted: m.rows().map(argmax).collect(),
    }
}
