//! Powell's direction-set method with a bounded golden-section line search,
//! wrapped in seeded random restarts.
//!
//! The first restart starts from equal weights; later ones start from
//! uniform draws in `[0, 1]^M`. The best point over all restarts wins.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::eval::Evaluator;
use super::rng::{stream, Stream};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PowellParams {
    pub restarts: usize,
    pub line_tolerance: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for PowellParams {
    fn default() -> Self {
        Self {
            restarts: 5,
            line_tolerance: 1e-6,
            tolerance: 1e-8,
            max_iterations: 100,
        }
    }
}

impl PowellParams {
    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::InvalidConfig("powell restarts must be at least 1".into()));
        }
        if [self.line_tolerance, self.tolerance].iter().any(|t| t.is_nan() || *t <= 0.0) {
            return Err(Error::InvalidConfig("powell tolerances must be positive".into()));
        }
        if self.max_iterations < 1 {
            return Err(Error::InvalidConfig("powell max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const TINY: f64 = 1e-25;

/// Budget exhausted.
struct Exhausted;

/// Range of `t` keeping `x + t * d` inside the unit box.
fn step_bounds(x: &[f64], d: &[f64]) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (&xi, &di) in x.iter().zip(d) {
        if di > 0.0 {
            lo = lo.max(-xi / di);
            hi = hi.min((1.0 - xi) / di);
        } else if di < 0.0 {
            lo = lo.max((1.0 - xi) / di);
            hi = hi.min(-xi / di);
        }
    }
    (lo.min(0.0), hi.max(0.0))
}

fn along(x: &[f64], d: &[f64], t: f64) -> Vec<f64> {
    x.iter()
        .zip(d)
        .map(|(xi, di)| (xi + t * di).clamp(0.0, 1.0))
        .collect()
}

/// Golden-section search of `x + t d` over the feasible segment. Returns the
/// best point seen, never worse than `(x, fx)`.
fn line_search(
    ev: &mut Evaluator<'_>,
    x: &[f64],
    fx: f64,
    d: &[f64],
    tol: f64,
) -> std::result::Result<(Vec<f64>, f64), Exhausted> {
    let scale = d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let (mut a, mut b) = step_bounds(x, d);
    if scale == 0.0 || b - a <= 0.0 {
        return Ok((x.to_vec(), fx));
    }
    let mut eval = |t: f64| -> std::result::Result<(f64, Vec<f64>), Exhausted> {
        let p = along(x, d, t);
        ev.eval(&p).map(|v| (v, p)).ok_or(Exhausted)
    };
    let mut best_f = fx;
    let mut c = b - INV_PHI * (b - a);
    let mut e = a + INV_PHI * (b - a);
    let (mut fc, pc) = eval(c)?;
    let (mut fe, pe) = eval(e)?;
    let mut best_p = x.to_vec();
    for (f, p) in [(fc, pc), (fe, pe)] {
        if f < best_f {
            (best_f, best_p) = (f, p);
        }
    }
    while (b - a) * scale > tol {
        if fc <= fe {
            b = e;
            e = c;
            fe = fc;
            c = b - INV_PHI * (b - a);
            let (f, p) = eval(c)?;
            fc = f;
            if f < best_f {
                (best_f, best_p) = (f, p);
            }
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + INV_PHI * (b - a);
            let (f, p) = eval(e)?;
            fe = f;
            if f < best_f {
                (best_f, best_p) = (f, p);
            }
        }
    }
    Ok((best_p, best_f))
}

fn descend(
    ev: &mut Evaluator<'_>,
    start: Vec<f64>,
    p: &PowellParams,
) -> std::result::Result<(), Exhausted> {
    let dim = start.len();
    let mut x = start;
    let mut fx = ev.eval(&x).ok_or(Exhausted)?;
    let mut dirs: Vec<Vec<f64>> = (0..dim)
        .map(|i| {
            let mut d = vec![0.0; dim];
            d[i] = 1.0;
            d
        })
        .collect();

    for _ in 0..p.max_iterations {
        let (x0, f0) = (x.clone(), fx);
        let (mut biggest, mut biggest_at) = (0.0, 0);
        for (i, d) in dirs.iter().enumerate() {
            let before = fx;
            (x, fx) = line_search(ev, &x, fx, d, p.line_tolerance)?;
            if before - fx > biggest {
                biggest = before - fx;
                biggest_at = i;
            }
        }
        if 2.0 * (f0 - fx) <= p.tolerance * (f0.abs() + fx.abs()) + TINY {
            break;
        }
        let shift: Vec<f64> = x.iter().zip(&x0).map(|(a, b)| a - b).collect();
        let extrapolated: Vec<f64> = x.iter().zip(&shift).map(|(a, s)| a + s).collect();
        if extrapolated.iter().any(|v| !(0.0..=1.0).contains(v)) {
            continue;
        }
        let fe = ev.eval(&extrapolated).ok_or(Exhausted)?;
        if fe < f0 {
            let t = 2.0 * (f0 - 2.0 * fx + fe) * (f0 - fx - biggest).powi(2)
                - biggest * (f0 - fe).powi(2);
            if t < 0.0 {
                (x, fx) = line_search(ev, &x, fx, &shift, p.line_tolerance)?;
                dirs.remove(biggest_at);
                dirs.push(shift);
            }
        }
    }
    Ok(())
}

pub(crate) fn run(ev: &mut Evaluator<'_>, dim: usize, p: &PowellParams, seed: u64) {
    let mut starts = stream(seed, Stream::PowellStarts);
    for r in 0..p.restarts {
        let start = if r == 0 {
            super::equal_point(dim)
        } else {
            (0..dim).map(|_| starts.random::<f64>()).collect()
        };
        if descend(ev, start, p).is_err() {
            return;
        }
    }
}
