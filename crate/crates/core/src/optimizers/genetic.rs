//! Generational real-coded genetic algorithm.
//!
//! Tournament selection, uniform crossover, per-gene Gaussian mutation
//! clamped to `[0, 1]`, and elitism. Stops at the generation cap or when the
//! best error has not improved for `stall_window` generations.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::eval::{rank_cmp, Evaluator};
use super::rng::{stream, Stream};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaParams {
    pub population_size: usize,
    pub generations: usize,
    pub tournament_size: usize,
    pub crossover_probability: f64,
    pub mutation_probability: f64,
    pub mutation_sigma: f64,
    pub elitism: usize,
    pub stall_window: usize,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            population_size: 50,
            generations: 100,
            tournament_size: 3,
            crossover_probability: 0.9,
            mutation_probability: 0.1,
            mutation_sigma: 0.1,
            elitism: 2,
            stall_window: 20,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvalidConfig(format!("ga {m}")));
        if self.population_size < 4 {
            return fail("population_size must be at least 4");
        }
        if self.tournament_size < 1 {
            return fail("tournament_size must be at least 1");
        }
        if self.elitism >= self.population_size {
            return fail("elitism must be smaller than population_size");
        }
        if !(0.0..=1.0).contains(&self.crossover_probability)
            || !(0.0..=1.0).contains(&self.mutation_probability)
        {
            return fail("probabilities must lie in [0, 1]");
        }
        if !(self.mutation_sigma >= 0.0 && self.mutation_sigma.is_finite()) {
            return fail("mutation_sigma must be finite and nonnegative");
        }
        if self.stall_window < 1 {
            return fail("stall_window must be at least 1");
        }
        Ok(())
    }
}

struct Individual {
    genes: Vec<f64>,
    error: f64,
}

fn tournament<'p, R: Rng>(pop: &'p [Individual], size: usize, rng: &mut R) -> &'p Individual {
    let mut best = &pop[rng.random_range(0..pop.len())];
    for _ in 1..size {
        let c = &pop[rng.random_range(0..pop.len())];
        if rank_cmp(c.error, &c.genes, best.error, &best.genes).is_lt() {
            best = c;
        }
    }
    best
}

pub(crate) fn run(ev: &mut Evaluator<'_>, dim: usize, p: &GaParams, seed: u64) {
    let mut init_rng = stream(seed, Stream::GaInit);
    let mut sel_rng = stream(seed, Stream::GaSelection);
    let mut cx_rng = stream(seed, Stream::GaCrossover);
    let mut mut_rng = stream(seed, Stream::GaMutation);
    let noise = Normal::new(0.0, p.mutation_sigma).expect("sigma validated");

    let genes: Vec<Vec<f64>> = (0..p.population_size)
        .map(|_| (0..dim).map(|_| init_rng.random::<f64>()).collect())
        .collect();
    let Some(errors) = ev.eval_batch(&genes) else {
        return;
    };
    let mut pop: Vec<Individual> = genes
        .into_iter()
        .zip(errors)
        .map(|(genes, error)| Individual { genes, error })
        .collect();

    let mut best = ev.best_value().unwrap_or(f64::INFINITY);
    let mut stalled = 0;
    for _ in 0..p.generations {
        pop.sort_by(|a, b| rank_cmp(a.error, &a.genes, b.error, &b.genes));

        let mut children = Vec::with_capacity(p.population_size - p.elitism);
        while children.len() < p.population_size - p.elitism {
            let a = tournament(&pop, p.tournament_size, &mut sel_rng);
            let b = tournament(&pop, p.tournament_size, &mut sel_rng);
            let mut child = a.genes.clone();
            if cx_rng.random_bool(p.crossover_probability) {
                for (c, &g) in child.iter_mut().zip(&b.genes) {
                    if cx_rng.random_bool(0.5) {
                        *c = g;
                    }
                }
            }
            for c in child.iter_mut() {
                if mut_rng.random_bool(p.mutation_probability) {
                    *c = (*c + noise.sample(&mut mut_rng)).clamp(0.0, 1.0);
                }
            }
            children.push(child);
        }

        let Some(errors) = ev.eval_batch(&children) else {
            break;
        };
        pop.truncate(p.elitism);
        pop.extend(
            children
                .into_iter()
                .zip(errors)
                .map(|(genes, error)| Individual { genes, error }),
        );

        let now = ev.best_value().unwrap_or(f64::INFINITY);
        if now < best {
            best = now;
            stalled = 0;
        } else {
            stalled += 1;
            if stalled >= p.stall_window {
                break;
            }
        }
    }
}
