//! Validation objective for weight search, plus classification metrics.
//!
//! The optimizers minimize the cumulative error `E = 1 - A`, where `A` is the
//! cumulative accuracy of the fused model on the validation split.

mod metrics;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{argmax, fuse_row, normalize, WeightVector};
use crate::scoreio::{FusionDataset, Split};

pub use metrics::{confusion, metrics, ConfusionCounts, MetricsReport, POSITIVE_CLASS};

/// How a candidate weight vector is scored on the validation split.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveVariant {
    /// Fraction of samples whose fused argmax equals the label.
    #[default]
    FusedAccuracy,
    /// Mean fused probability assigned to the true class.
    ScoreMass,
}

impl ObjectiveVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            ObjectiveVariant::FusedAccuracy => "fused_accuracy",
            ObjectiveVariant::ScoreMass => "score_mass",
        }
    }
}

impl fmt::Display for ObjectiveVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ObjectiveVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fused_accuracy" => Ok(Self::FusedAccuracy),
            "score_mass" => Ok(Self::ScoreMass),
            other => Err(Error::InvalidConfig(format!("unknown objective `{other}`"))),
        }
    }
}

/// Cumulative accuracy of the fusion under `w` (normalized internally).
pub fn cumulative_accuracy(
    dataset: &FusionDataset,
    w: &WeightVector,
    variant: ObjectiveVariant,
) -> Result<f64> {
    if dataset.split() != Split::Validation {
        return Err(Error::SplitMismatch);
    }
    accuracy_on(dataset, w, variant)
}

/// Same scoring without the validation-split guard; used for reporting.
pub(crate) fn accuracy_on(
    dataset: &FusionDataset,
    w: &WeightVector,
    variant: ObjectiveVariant,
) -> Result<f64> {
    let w = normalize(w)?;
    if w.len() != dataset.num_models() {
        return Err(Error::LengthMismatch {
            expected: dataset.num_models(),
            found: w.len(),
        });
    }
    let n = dataset.num_samples();
    let mut row = vec![0.0; dataset.num_classes()];
    let labels = dataset.labels().labels();
    match variant {
        ObjectiveVariant::FusedAccuracy => {
            let mut correct = 0usize;
            for (i, &label) in labels.iter().enumerate() {
                fuse_row(dataset.matrices(), i, w.as_slice(), &mut row);
                if argmax(&row) == label {
                    correct += 1;
                }
            }
            Ok(correct as f64 / n as f64)
        }
        ObjectiveVariant::ScoreMass => {
            let mut mass = 0.0;
            for (i, &label) in labels.iter().enumerate() {
                fuse_row(dataset.matrices(), i, w.as_slice(), &mut row);
                mass += row[label];
            }
            Ok(mass / n as f64)
        }
    }
}

/// `1 - cumulative_accuracy`.
pub fn cumulative_error(
    dataset: &FusionDataset,
    w: &WeightVector,
    variant: ObjectiveVariant,
) -> Result<f64> {
    cumulative_accuracy(dataset, w, variant).map(|a| 1.0 - a)
}

/// A function of normalized weights to be minimized.
///
/// Implementations must be pure: the optimizers may evaluate candidates on
/// several threads and rely on identical inputs giving identical outputs.
pub trait Objective: Sync {
    fn error(&self, weights: &[f64]) -> f64;
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn error(&self, weights: &[f64]) -> f64 {
        self(weights)
    }
}

/// Cumulative error of a validation dataset.
#[derive(Debug, Clone, Copy)]
pub struct FusionObjective<'a> {
    dataset: &'a FusionDataset,
    variant: ObjectiveVariant,
}

impl<'a> FusionObjective<'a> {
    pub fn new(dataset: &'a FusionDataset, variant: ObjectiveVariant) -> Result<Self> {
        if dataset.split() != Split::Validation {
            return Err(Error::SplitMismatch);
        }
        Ok(Self { dataset, variant })
    }

    pub fn dataset(&self) -> &FusionDataset {
        self.dataset
    }

    pub fn variant(&self) -> ObjectiveVariant {
        self.variant
    }
}

impl Objective for FusionObjective<'_> {
    fn error(&self, weights: &[f64]) -> f64 {
        WeightVector::new(weights.to_vec())
            .and_then(|w| cumulative_error(self.dataset, &w, self.variant))
            .unwrap_or(1.0)
    }
}
