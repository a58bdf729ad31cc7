//! Seeded synthetic score tables shared by the integration tests.
#![allow(dead_code)]

use std::path::Path;

use meritfuse_core::scoreio::{self, write_labels, write_scores, LabelVector, ScoreMatrix};
use meritfuse_core::FusionDataset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i:04}")).collect()
}

/// Binary labels with roughly `positive_rate` positives, and one score table
/// per entry of `skills`. A model with skill `s` ranks the true class first
/// with probability `s`, independently of the other models.
pub fn binary_tables(
    seed: u64,
    n: usize,
    positive_rate: f64,
    skills: &[f64],
) -> (Vec<ScoreMatrix>, LabelVector) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample_ids = ids(n);
    let labels: Vec<usize> = (0..n).map(|_| rng.random_bool(positive_rate) as usize).collect();
    let matrices = skills
        .iter()
        .enumerate()
        .map(|(m, &skill)| {
            let rows = labels
                .iter()
                .map(|&y| {
                    let margin = rng.random_range(0.02..0.5);
                    let p_true = if rng.random_bool(skill) { 0.5 + margin } else { 0.5 - margin };
                    let mut row = vec![0.0; 2];
                    row[y] = p_true;
                    row[1 - y] = 1.0 - p_true;
                    row
                })
                .collect();
            ScoreMatrix::from_rows(format!("m{}", m + 1), sample_ids.clone(), rows).unwrap()
        })
        .collect();
    (matrices, LabelVector::new(sample_ids, labels).unwrap())
}

/// Random K-class tables whose rows are arbitrary points on the simplex.
pub fn random_tables(rng: &mut ChaCha8Rng, n: usize, models: usize, classes: usize) -> (Vec<ScoreMatrix>, LabelVector) {
    let sample_ids = ids(n);
    let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..classes)).collect();
    let matrices = (0..models)
        .map(|m| {
            let rows = (0..n)
                .map(|_| {
                    let raw: Vec<f64> = (0..classes).map(|_| rng.random_range(0.001..1.0)).collect();
                    let s: f64 = raw.iter().sum();
                    raw.iter().map(|x| x / s).collect()
                })
                .collect();
            ScoreMatrix::from_rows(format!("m{}", m + 1), sample_ids.clone(), rows).unwrap()
        })
        .collect();
    (matrices, LabelVector::new(sample_ids, labels).unwrap())
}

pub fn dataset(matrices: Vec<ScoreMatrix>, labels: LabelVector) -> FusionDataset {
    scoreio::align(matrices, labels).unwrap()
}

/// Writes tables, labels, a validation id list (the first `validation`
/// samples) and a manifest into `dir`; returns the manifest path.
pub fn write_experiment(
    dir: &Path,
    matrices: &[ScoreMatrix],
    labels: &LabelVector,
    validation: usize,
    extra: &str,
) -> std::path::PathBuf {
    let mut models = Vec::new();
    for m in matrices {
        let file = format!("{}.csv", m.model_id());
        write_scores(m, dir.join(&file)).unwrap();
        models.push(format!(r#"{{"id": "{}", "scores_path": "{}"}}"#, m.model_id(), file));
    }
    write_labels(labels, dir.join("labels.csv")).unwrap();
    let val: String = labels.sample_ids()[..validation].iter().map(|s| format!("{s}\n")).collect();
    std::fs::write(dir.join("validation_ids.txt"), val).unwrap();
    let manifest = format!(
        r#"{{
  "models": [{}],
  "labels_path": "labels.csv",
  "validation_ids_path": "validation_ids.txt",
  "output": "report.csv"{}
}}
"#,
        models.join(", "),
        extra
    );
    let path = dir.join("manifest.json");
    std::fs::write(&path, manifest).unwrap();
    path
}
