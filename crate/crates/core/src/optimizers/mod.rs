//! Derivative-free weight search.
//!
//! Every method searches raw vectors in the box `[0, 1]^M`. In simplex mode
//! ([`optimize`]) each candidate is normalized before the objective sees it
//! and all-zero candidates score 1.0. [`minimize_box`] runs the same methods
//! on a function of the raw vector itself.
//!
//! Runs are deterministic: each random draw site reads its own ChaCha stream
//! derived from the configured seed, candidates evaluated in parallel are
//! reduced in submission order, and equal errors resolve to the
//! lexicographically smallest point.

pub mod brute_force;
mod eval;
pub mod genetic;
pub mod nelder_mead;
pub mod powell;
pub mod pso;
mod rng;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::WeightVector;
use crate::objective::Objective;

pub use brute_force::brute_force;
pub use eval::TracePoint;
pub use genetic::GaParams;
pub use nelder_mead::NelderMeadParams;
pub use powell::PowellParams;
pub use pso::PsoParams;

use eval::{Evaluator, Space};

pub const DEFAULT_GRID_STEP: f64 = 0.05;
pub const DEFAULT_MAX_EVALUATIONS: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "equal")]
    Equal,
    #[serde(rename = "pso")]
    Pso,
    #[serde(rename = "ga")]
    Genetic,
    #[serde(rename = "bf")]
    BruteForce,
    #[serde(rename = "powell")]
    Powell,
    #[serde(rename = "nelder-mead")]
    NelderMead,
}

impl Method {
    /// All methods, in report order.
    pub const ALL: [Method; 6] = [
        Method::Equal,
        Method::Pso,
        Method::Genetic,
        Method::BruteForce,
        Method::Powell,
        Method::NelderMead,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Equal => "equal",
            Method::Pso => "pso",
            Method::Genetic => "ga",
            Method::BruteForce => "bf",
            Method::Powell => "powell",
            Method::NelderMead => "nelder-mead",
        }
    }

    /// Whether the method draws random numbers under its default settings.
    pub fn is_stochastic(&self) -> bool {
        matches!(self, Method::Pso | Method::Genetic | Method::Powell)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

/// Per-method hyperparameters. Missing entries take their defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerParams {
    pub max_evaluations: usize,
    pub pso: PsoParams,
    pub ga: GaParams,
    pub powell: PowellParams,
    #[serde(rename = "nelder-mead")]
    pub nelder_mead: NelderMeadParams,
}

impl Default for OptimizerParams {
    fn default() -> Self {
        Self {
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
            pso: PsoParams::default(),
            ga: GaParams::default(),
            powell: PowellParams::default(),
            nelder_mead: NelderMeadParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub method: Method,
    pub params: OptimizerParams,
    pub seed: u64,
    pub grid_step: f64,
}

impl OptimizerConfig {
    pub fn new(method: Method, seed: u64) -> Self {
        Self {
            method,
            params: OptimizerParams::default(),
            seed,
            grid_step: DEFAULT_GRID_STEP,
        }
    }

    pub fn with_params(mut self, params: OptimizerParams) -> Self {
        self.params = params;
        self
    }

    pub fn with_grid_step(mut self, grid_step: f64) -> Self {
        self.grid_step = grid_step;
        self
    }

    pub fn max_evaluations(&self) -> usize {
        self.params.max_evaluations
    }

    pub fn validate(&self) -> Result<()> {
        if self.params.max_evaluations < 1 {
            return Err(Error::InvalidConfig("max_evaluations must be at least 1".into()));
        }
        if !(self.grid_step > 0.0 && self.grid_step <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "grid_step {} is outside (0, 1]",
                self.grid_step
            )));
        }
        match self.method {
            Method::Equal | Method::BruteForce => Ok(()),
            Method::Pso => self.params.pso.validate(),
            Method::Genetic => self.params.ga.validate(),
            Method::Powell => self.params.powell.validate(),
            Method::NelderMead => self.params.nelder_mead.validate(),
        }
    }
}

/// Outcome of a weight search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    pub method: Method,
    pub seed: u64,
    pub best_error: f64,
    pub best_weights: WeightVector,
    pub evaluations: usize,
    pub trace: Vec<TracePoint>,
}

impl OptResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("OptResult serializes")
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = self.to_json();
        text.push('\n');
        crate::scoreio::write_file(path.as_ref(), text.as_bytes())
    }

    /// `evaluation,best_error` CSV of the trace.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("evaluation,best_error\n");
        for t in &self.trace {
            out.push_str(&format!("{},{}\n", t.evaluation, t.best_error));
        }
        out
    }

    pub fn write_trace(&self, path: impl AsRef<Path>) -> Result<()> {
        crate::scoreio::write_file(path.as_ref(), self.trace_csv().as_bytes())
    }
}

/// Result of a raw box-constrained run.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxResult {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
    pub trace: Vec<TracePoint>,
}

/// Searches weights for `models` fused models, minimizing `objective` over
/// normalized weight vectors.
pub fn optimize<O>(objective: &O, models: usize, cfg: &OptimizerConfig) -> Result<OptResult>
where
    O: Objective + ?Sized,
{
    let score = |w: &[f64]| objective.error(w);
    let (point, value, evaluations, trace) = run(&score, models, cfg, Space::Simplex)?;
    Ok(OptResult {
        method: cfg.method,
        seed: cfg.seed,
        best_error: value,
        best_weights: WeightVector::new(point)?,
        evaluations,
        trace,
    })
}

/// Minimizes `f` directly over the box `[0, 1]^dim`.
pub fn minimize_box<F>(f: &F, dim: usize, cfg: &OptimizerConfig) -> Result<BoxResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let (best_point, best_value, evaluations, trace) = run(f, dim, cfg, Space::Box)?;
    Ok(BoxResult {
        best_point,
        best_value,
        evaluations,
        trace,
    })
}

type RunOutput = (Vec<f64>, f64, usize, Vec<TracePoint>);

fn run(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    dim: usize,
    cfg: &OptimizerConfig,
    space: Space,
) -> Result<RunOutput> {
    if dim == 0 {
        return Err(Error::InvalidConfig("need at least one model".into()));
    }
    cfg.validate()?;
    let mut ev = Evaluator::new(f, space, cfg.max_evaluations());
    match cfg.method {
        Method::Equal => {
            ev.eval(&equal_point(dim));
        }
        Method::BruteForce => brute_force::run(&mut ev, dim, cfg.grid_step)?,
        Method::Pso => pso::run(&mut ev, dim, &cfg.params.pso, cfg.seed),
        Method::Genetic => genetic::run(&mut ev, dim, &cfg.params.ga, cfg.seed),
        Method::Powell => powell::run(&mut ev, dim, &cfg.params.powell, cfg.seed),
        Method::NelderMead => nelder_mead::run(&mut ev, dim, &cfg.params.nelder_mead),
    }
    Ok(ev.finish(dim))
}

pub(crate) fn equal_point(dim: usize) -> Vec<f64> {
    vec![1.0 / dim as f64; dim]
}
