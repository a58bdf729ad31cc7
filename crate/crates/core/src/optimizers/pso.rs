//! Global-best particle swarm with inertia and a per-axis velocity clamp.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::eval::Evaluator;
use super::rng::{stream, Stream};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoParams {
    pub swarm_size: usize,
    pub iterations: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    pub velocity_clamp: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            swarm_size: 30,
            iterations: 100,
            inertia: 0.729,
            cognitive: 1.49445,
            social: 1.49445,
            velocity_clamp: 0.5,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        if self.swarm_size < 2 {
            return Err(Error::InvalidConfig("pso swarm_size must be at least 2".into()));
        }
        let finite_nonneg = [self.inertia, self.cognitive, self.social]
            .iter()
            .all(|c| c.is_finite() && *c >= 0.0);
        if !finite_nonneg {
            return Err(Error::InvalidConfig("pso coefficients must be finite and nonnegative".into()));
        }
        if !(self.velocity_clamp > 0.0 && self.velocity_clamp.is_finite()) {
            return Err(Error::InvalidConfig("pso velocity_clamp must be positive".into()));
        }
        Ok(())
    }
}

pub(crate) fn run(ev: &mut Evaluator<'_>, dim: usize, p: &PsoParams, seed: u64) {
    let mut pos_rng = stream(seed, Stream::PsoPositions);
    let mut vel_rng = stream(seed, Stream::PsoVelocities);
    let mut step_rng = stream(seed, Stream::PsoUpdate);
    let vmax = p.velocity_clamp;

    let mut positions: Vec<Vec<f64>> = (0..p.swarm_size)
        .map(|_| (0..dim).map(|_| pos_rng.random::<f64>()).collect())
        .collect();
    let mut velocities: Vec<Vec<f64>> = (0..p.swarm_size)
        .map(|_| (0..dim).map(|_| vel_rng.random_range(-vmax..=vmax)).collect())
        .collect();

    let Some(values) = ev.eval_batch(&positions) else {
        return;
    };
    let mut personal = positions.clone();
    let mut personal_best = values;

    for _ in 0..p.iterations {
        let global = ev
            .best_raw()
            .map(<[f64]>::to_vec)
            .unwrap_or_else(|| super::equal_point(dim));
        for ((x, v), pb) in positions.iter_mut().zip(&mut velocities).zip(&personal) {
            for d in 0..dim {
                let r1: f64 = step_rng.random();
                let r2: f64 = step_rng.random();
                let next = p.inertia * v[d]
                    + p.cognitive * r1 * (pb[d] - x[d])
                    + p.social * r2 * (global[d] - x[d]);
                v[d] = next.clamp(-vmax, vmax);
                x[d] = (x[d] + v[d]).clamp(0.0, 1.0);
            }
        }
        let Some(values) = ev.eval_batch(&positions) else {
            break;
        };
        for (i, value) in values.into_iter().enumerate() {
            if value < personal_best[i] {
                personal_best[i] = value;
                personal[i].clone_from(&positions[i]);
            }
        }
    }
}
