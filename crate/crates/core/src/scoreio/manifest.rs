use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::ObjectiveVariant;
use crate::optimizers::{Method, OptimizerConfig, OptimizerParams, DEFAULT_GRID_STEP};

use super::{align, load_id_list, load_labels, load_scores_as, FusionDataset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelEntry {
    pub id: String,
    pub scores_path: PathBuf,
}

/// Experiment description. Relative paths resolve against the manifest's
/// own directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub models: Vec<ModelEntry>,
    pub labels_path: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation_ids_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default)]
    pub params: OptimizerParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default = "default_grid_step")]
    pub grid_step: f64,
    #[serde(default)]
    pub objective: ObjectiveVariant,
    pub output: PathBuf,
}

fn default_grid_step() -> f64 {
    DEFAULT_GRID_STEP
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Manifest(e.to_string()))
    }

    /// Reads a manifest, resolves its paths and checks that every
    /// referenced input exists.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut m = Self::from_json(&text)?;
        let base = path.parent().unwrap_or_else(|| Path::new(""));
        m.resolve(base);
        m.check_inputs()?;
        Ok(m)
    }

    fn resolve(&mut self, base: &Path) {
        let join = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        for model in &mut self.models {
            join(&mut model.scores_path);
        }
        join(&mut self.labels_path);
        if let Some(p) = self.validation_ids_path.as_mut() {
            join(p);
        }
        join(&mut self.output);
    }

    fn check_inputs(&self) -> Result<()> {
        if self.models.is_empty() {
            return Err(Error::Manifest("`models` must list at least one model".into()));
        }
        let inputs = self
            .models
            .iter()
            .map(|m| &m.scores_path)
            .chain(std::iter::once(&self.labels_path))
            .chain(self.validation_ids_path.iter());
        for p in inputs {
            if !p.is_file() {
                return Err(Error::io(
                    p,
                    std::io::Error::new(std::io::ErrorKind::NotFound, "referenced file does not exist"),
                ));
            }
        }
        Ok(())
    }

    pub fn method(&self) -> Result<Option<Method>> {
        self.method.as_deref().map(str::parse).transpose()
    }

    /// Optimizer settings for `method`. Stochastic methods need a seed.
    pub fn optimizer_config(&self, method: Method) -> Result<OptimizerConfig> {
        let seed = match (self.seed, method.is_stochastic()) {
            (Some(seed), _) => seed,
            (None, false) => 0,
            (None, true) => {
                return Err(Error::Usage(format!("method `{method}` requires a `seed`")));
            }
        };
        let cfg = OptimizerConfig::new(method, seed)
            .with_params(self.params.clone())
            .with_grid_step(self.grid_step);
        cfg.validate()?;
        Ok(cfg)
    }

    /// Loads and aligns all scores, then splits into (validation, test).
    /// Without a validation id list both splits hold every sample.
    pub fn load_splits(&self) -> Result<(FusionDataset, FusionDataset)> {
        let matrices = self
            .models
            .iter()
            .map(|m| load_scores_as(&m.scores_path, m.id.clone()))
            .collect::<Result<Vec<_>>>()?;
        let labels = load_labels(&self.labels_path)?;
        let dataset = align(matrices, labels)?;
        match &self.validation_ids_path {
            Some(p) => {
                let ids = load_id_list(p)?;
                let (val, test) = dataset.partition(&ids)?;
                if val.num_samples() == 0 {
                    return Err(Error::Manifest("validation id list is empty".into()));
                }
                if test.num_samples() == 0 {
                    return Err(Error::Manifest("validation ids leave no test samples".into()));
                }
                Ok((val, test))
            }
            None => Ok((dataset.clone(), dataset.with_split(super::Split::Test))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "models": [{"id": "bert", "scores_path": "bert.csv"}],
        "labels_path": "labels.csv",
        "output": "out/report.csv"
    }"#;

    #[test]
    fn defaults_apply() {
        let m = Manifest::from_json(MINIMAL).unwrap();
        assert_eq!(m.grid_step, 0.05);
        assert_eq!(m.objective, ObjectiveVariant::FusedAccuracy);
        assert_eq!(m.seed, None);
        assert_eq!(m.method().unwrap(), None);
        assert_eq!(m.params, OptimizerParams::default());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let typo = MINIMAL.replace("\"output\"", "\"outptu\"");
        assert!(matches!(Manifest::from_json(&typo), Err(Error::Manifest(_))));
        let extra = MINIMAL.replace("\"output\"", "\"colour\": 1, \"output\"");
        assert!(Manifest::from_json(&extra).is_err());
    }

    #[test]
    fn stochastic_methods_need_seed() {
        let m = Manifest::from_json(MINIMAL).unwrap();
        assert!(matches!(m.optimizer_config(Method::Pso), Err(Error::Usage(_))));
        assert_eq!(m.optimizer_config(Method::BruteForce).unwrap().seed, 0);
        let seeded = Manifest::from_json(&MINIMAL.replace("\"output\"", "\"seed\": 9, \"output\"")).unwrap();
        assert_eq!(seeded.optimizer_config(Method::Genetic).unwrap().seed, 9);
    }

    #[test]
    fn load_checks_files_and_resolves_paths() {
        let dir = tempfile::tempdir().unwrap();
        let mpath = dir.path().join("m.json");
        std::fs::write(&mpath, MINIMAL).unwrap();
        assert!(Manifest::load(&mpath).unwrap_err().is_io());
        std::fs::write(dir.path().join("bert.csv"), "sample_id,class_0,class_1\na,0.5,0.5\n").unwrap();
        std::fs::write(dir.path().join("labels.csv"), "sample_id,label\na,1\n").unwrap();
        let m = Manifest::load(&mpath).unwrap();
        assert_eq!(m.output, dir.path().join("out/report.csv"));
        let (val, test) = m.load_splits().unwrap();
        assert_eq!(val.num_samples(), 1);
        assert_eq!(test.split(), super::super::Split::Test);
    }
}
