use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::Predictions;
use crate::scoreio::LabelVector;

/// Class index treated as "relevant" in binary metrics.
pub const POSITIVE_CLASS: usize = 1;

/// One-vs-rest confusion counts for `positive_class`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tn: usize,
    pub positive_class: usize,
}

impl ConfusionCounts {
    pub fn total(&self) -> usize {
        self.tp + self.fp + self.fn_ + self.tn
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub accuracy: f64,
    pub confusion: ConfusionCounts,
}

impl MetricsReport {
    /// F1 from precision and recall; 0 when both are 0.
    pub fn f1_from(precision: f64, recall: f64) -> f64 {
        if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        }
    }
}

pub fn confusion(
    pred: &Predictions,
    labels: &LabelVector,
    positive_class: usize,
) -> Result<ConfusionCounts> {
    if pred.predicted.len() != labels.len() || pred.sample_ids.len() != labels.len() {
        return Err(Error::LengthMismatch {
            expected: labels.len(),
            found: pred.predicted.len(),
        });
    }
    if let Some(position) = pred
        .sample_ids
        .iter()
        .zip(labels.sample_ids())
        .position(|(a, b)| a != b)
    {
        return Err(Error::IdMismatch { position });
    }
    let mut c = ConfusionCounts {
        positive_class,
        ..Default::default()
    };
    for (&p, &y) in pred.predicted.iter().zip(labels.labels()) {
        match (p == positive_class, y == positive_class) {
            (true, true) => c.tp += 1,
            (true, false) => c.fp += 1,
            (false, true) => c.fn_ += 1,
            (false, false) => c.tn += 1,
        }
    }
    Ok(c)
}

/// Precision, recall, F1 and accuracy. Zero denominators give 0.
pub fn metrics(confusion: ConfusionCounts) -> Result<MetricsReport> {
    let total = confusion.total();
    if total == 0 {
        return Err(Error::EmptyConfusion);
    }
    let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    let precision = ratio(confusion.tp, confusion.tp + confusion.fp);
    let recall = ratio(confusion.tp, confusion.tp + confusion.fn_);
    Ok(MetricsReport {
        precision,
        recall,
        f1: MetricsReport::f1_from(precision, recall),
        accuracy: ratio(confusion.tp + confusion.tn, total),
        confusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(pred: &[usize], labels: &[usize]) -> ConfusionCounts {
        let ids: Vec<String> = (0..pred.len()).map(|i| format!("s{i}")).collect();
        let p = Predictions {
            sample_ids: ids.clone(),
            predicted: pred.to_vec(),
        };
        confusion(&p, &LabelVector::new(ids, labels.to_vec()).unwrap(), POSITIVE_CLASS).unwrap()
    }

    #[test]
    fn perfect_predictions() {
        let c = case(&[1, 0, 1, 0, 0], &[1, 0, 1, 0, 0]);
        assert_eq!((c.tp, c.fp, c.fn_, c.tn), (2, 0, 0, 3));
    }

    #[test]
    fn all_false_positives() {
        let c = case(&[1; 4], &[0; 4]);
        assert_eq!((c.tp, c.fp, c.fn_, c.tn), (0, 4, 0, 0));
    }

    #[test]
    fn crafted_ten_samples() {
        // Hand count: positions 0-2 tp, 3 fp, 4 fn, 5-9 tn.
        let pred = [1, 1, 1, 1, 0, 0, 0, 0, 0, 0];
        let labels = [1, 1, 1, 0, 1, 0, 0, 0, 0, 0];
        let c = case(&pred, &labels);
        assert_eq!((c.tp, c.fp, c.fn_, c.tn), (3, 1, 1, 5));
        let m = metrics(c).unwrap();
        assert_eq!(m.precision, 0.75);
        assert_eq!(m.recall, 0.75);
        assert_eq!(m.f1, 0.75);
        assert_eq!(m.accuracy, 0.8);
    }

    #[test]
    fn degenerate_counts() {
        let m = metrics(ConfusionCounts {
            tn: 4,
            positive_class: 1,
            ..Default::default()
        })
        .unwrap();
        assert_eq!((m.precision, m.recall, m.f1, m.accuracy), (0.0, 0.0, 0.0, 1.0));
        assert!(matches!(metrics(ConfusionCounts::default()), Err(Error::EmptyConfusion)));
    }

    #[test]
    fn reported_bert_row_is_consistent() {
        let f1 = MetricsReport::f1_from(0.833, 0.790);
        assert!((f1 - 0.811).abs() <= 0.0005, "{f1}");
    }

    #[test]
    fn mismatched_ids_are_rejected() {
        let p = Predictions {
            sample_ids: vec!["a".into(), "b".into()],
            predicted: vec![0, 1],
        };
        let l = LabelVector::new(vec!["a".into(), "c".into()], vec![0, 1]).unwrap();
        assert!(matches!(confusion(&p, &l, 1), Err(Error::IdMismatch { position: 1 })));
        let short = LabelVector::new(vec!["a".into()], vec![0]).unwrap();
        assert!(matches!(confusion(&p, &short, 1), Err(Error::LengthMismatch { .. })));
    }
}
