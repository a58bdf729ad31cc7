//! Writes the bundled synthetic experiment: three binary classifiers of
//! uneven quality scored on 600 samples, about 17% of them positive.
//!
//!     cargo run -p meritfuse-core --example synthetic -- crates/core/data/synthetic

use std::path::PathBuf;

use meritfuse_core::scoreio::{write_labels, write_scores, LabelVector, ScoreMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 600;
const VALIDATION: usize = 300;
const MODELS: [(&str, f64); 3] = [("strong", 0.86), ("mediocre", 0.74), ("weak", 0.63)];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data/synthetic".into()));
    let mut rng = ChaCha8Rng::seed_from_u64(2021);
    let ids: Vec<String> = (0..SAMPLES).map(|i| format!("t{i:04}")).collect();
    let labels: Vec<usize> = (0..SAMPLES).map(|_| rng.random_bool(0.17) as usize).collect();

    for (name, skill) in MODELS {
        let rows = labels
            .iter()
            .map(|&y| {
                // Round to three decimals like a typical exported score file.
                let margin = (rng.random_range(0.02..0.48f64) * 1000.0).round() / 1000.0;
                let p_true = if rng.random_bool(skill) { 0.5 + margin } else { 0.5 - margin };
                let mut row = vec![0.0; 2];
                row[y] = p_true;
                row[1 - y] = ((1.0 - p_true) * 1000.0).round() / 1000.0;
                row
            })
            .collect();
        write_scores(&ScoreMatrix::from_rows(name, ids.clone(), rows)?, dir.join(format!("{name}.csv")))?;
    }
    write_labels(&LabelVector::new(ids.clone(), labels)?, dir.join("labels.csv"))?;
    let validation: String = ids[..VALIDATION].iter().map(|s| format!("{s}\n")).collect();
    std::fs::write(dir.join("validation_ids.txt"), validation)?;

    let manifest = r#"{
  "models": [
    {"id": "strong", "scores_path": "strong.csv"},
    {"id": "mediocre", "scores_path": "mediocre.csv"},
    {"id": "weak", "scores_path": "weak.csv"}
  ],
  "labels_path": "labels.csv",
  "validation_ids_path": "validation_ids.txt",
  "seed": 42,
  "output": "report.csv"
}
"#;
    std::fs::write(dir.join("manifest.json"), manifest)?;
    Ok(())
}
