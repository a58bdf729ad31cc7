use std::path::Path;

use crate::error::Result;
use crate::objective::MetricsReport;

pub const REPORT_HEADER: [&str; 7] = [
    "method",
    "precision",
    "recall",
    "f1",
    "accuracy",
    "objective",
    "weights",
];

/// One line of a report CSV: test metrics plus the validation objective
/// and the weights that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub method: String,
    pub metrics: MetricsReport,
    pub objective: f64,
    pub weights: Vec<f64>,
}

impl ReportRow {
    fn record(&self) -> [String; 7] {
        let weights = self
            .weights
            .iter()
            .map(|w| format!("{w:.6}"))
            .collect::<Vec<_>>()
            .join(";");
        [
            self.method.clone(),
            format!("{:.6}", self.metrics.precision),
            format!("{:.6}", self.metrics.recall),
            format!("{:.6}", self.metrics.f1),
            format!("{:.6}", self.metrics.accuracy),
            format!("{:.6}", self.objective),
            weights,
        ]
    }
}

/// Renders rows as report CSV text.
pub fn render_report(rows: &[ReportRow]) -> String {
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(REPORT_HEADER).expect("in-memory write");
    for row in rows {
        out.write_record(row.record()).expect("in-memory write");
    }
    String::from_utf8(out.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn write_report(rows: &[ReportRow], path: impl AsRef<Path>) -> Result<()> {
    super::write_file(path.as_ref(), render_report(rows).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::{metrics, ConfusionCounts};

    fn row(method: &str) -> ReportRow {
        let m = metrics(ConfusionCounts {
            tp: 3,
            fp: 1,
            fn_: 1,
            tn: 5,
            positive_class: 1,
        })
        .unwrap();
        ReportRow {
            method: method.into(),
            metrics: m,
            objective: 0.125,
            weights: vec![0.5, 0.25, 0.25],
        }
    }

    #[test]
    fn single_row_layout() {
        assert_eq!(
            render_report(&[row("bert")]),
            "method,precision,recall,f1,accuracy,objective,weights\n\
             bert,0.750000,0.750000,0.750000,0.800000,0.125000,0.500000;0.250000;0.250000\n"
        );
    }

    #[test]
    fn comparison_keeps_row_order_and_empty_is_header_only() {
        let names = ["equal", "pso", "ga", "bf", "powell", "nelder-mead"];
        let rows: Vec<ReportRow> = names.iter().map(|n| row(n)).collect();
        let text = render_report(&rows);
        let firsts: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
        assert_eq!(firsts, names);
        assert_eq!(render_report(&[]), "method,precision,recall,f1,accuracy,objective,weights\n");
    }

    #[test]
    fn write_fails_on_bad_path() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        std::fs::write(&blocker, "x").unwrap();
        assert!(write_report(&[], blocker.join("r.csv")).unwrap_err().is_io());
    }
}
