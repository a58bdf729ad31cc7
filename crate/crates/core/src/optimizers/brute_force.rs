//! Exhaustive search over a regular grid on the weight simplex.

use crate::error::{Error, Result};
use crate::objective::Objective;

use super::eval::Evaluator;
use super::{equal_point, optimize, Method, OptResult, OptimizerConfig};

/// Number of grid divisions implied by `grid_step`, which must divide 1.
pub fn divisions(grid_step: f64) -> Result<usize> {
    if !(grid_step > 0.0 && grid_step <= 1.0) {
        return Err(Error::InvalidConfig(format!("grid_step {grid_step} is outside (0, 1]")));
    }
    let n = (1.0 / grid_step).round();
    if (n * grid_step - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidConfig(format!("grid_step {grid_step} does not divide 1")));
    }
    Ok(n as usize)
}

/// `C(n + m - 1, m - 1)`: grid points with `m` coordinates on `n` divisions.
pub fn grid_size(models: usize, divisions: usize) -> usize {
    let k = models.saturating_sub(1);
    (1..=k).fold(1usize, |acc, i| {
        acc.saturating_mul(divisions + i) / i
    })
}

/// Simplex grid points (multiples of `1/n` summing to 1), in lexicographic
/// order, followed by the one-hot vectors and equal weights not already
/// on the grid.
pub fn candidates(models: usize, grid_step: f64) -> Result<Vec<Vec<f64>>> {
    let n = divisions(grid_step)?;
    let mut out = Vec::with_capacity(grid_size(models, n) + models + 1);
    let mut counts = vec![0usize; models];
    compositions(&mut counts, 0, n, &mut |c| {
        out.push(c.iter().map(|&k| k as f64 / n as f64).collect());
    });
    let mut extra: Vec<Vec<f64>> = (0..models)
        .map(|j| {
            let mut v = vec![0.0; models];
            v[j] = 1.0;
            v
        })
        .collect();
    extra.push(equal_point(models));
    for e in extra {
        if !out.contains(&e) {
            out.push(e);
        }
    }
    Ok(out)
}

fn compositions(counts: &mut [usize], pos: usize, left: usize, emit: &mut dyn FnMut(&[usize])) {
    if pos + 1 == counts.len() {
        counts[pos] = left;
        emit(counts);
        return;
    }
    for k in 0..=left {
        counts[pos] = k;
        compositions(counts, pos + 1, left - k, emit);
    }
}

pub(crate) fn run(ev: &mut Evaluator<'_>, models: usize, grid_step: f64) -> Result<()> {
    let n = divisions(grid_step)?;
    let size = grid_size(models, n);
    if size > ev.remaining() {
        return Err(Error::BudgetExceeded {
            points: size,
            budget: ev.remaining(),
        });
    }
    let points = candidates(models, grid_step)?;
    if points.len() > ev.remaining() {
        return Err(Error::BudgetExceeded {
            points: points.len(),
            budget: ev.remaining(),
        });
    }
    ev.eval_batch(&points).expect("budget checked");
    Ok(())
}

/// Grid search with the given step. Ties go to the lexicographically
/// smallest weight vector.
pub fn brute_force<O>(
    objective: &O,
    models: usize,
    grid_step: f64,
    max_evaluations: usize,
) -> Result<OptResult>
where
    O: Objective + ?Sized,
{
    let mut cfg = OptimizerConfig::new(Method::BruteForce, 0).with_grid_step(grid_step);
    cfg.params.max_evaluations = max_evaluations;
    optimize(objective, models, &cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_counts_follow_stars_and_bars() {
        // C(22, 2) = 231 points for three models at step 0.05.
        assert_eq!(grid_size(3, 20), 231);
        let c = candidates(3, 0.05).unwrap();
        // One-hots are on the grid; only (1/3, 1/3, 1/3) is appended.
        assert_eq!(c.len(), 232);
        // (0.5, 0.5) is already a grid point.
        assert_eq!(candidates(2, 0.25).unwrap().len(), 5);
        assert_eq!(candidates(2, 0.1).unwrap().len(), 11);
        assert_eq!(candidates(3, 0.25).unwrap().len(), 15 + 1);
        assert_eq!(candidates(1, 0.1).unwrap(), vec![vec![1.0]]);
        assert!(c.iter().all(|p| (p.iter().sum::<f64>() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn brute_force_evaluates_every_candidate() {
        let r = brute_force(&|_: &[f64]| 0.3, 3, 0.05, 10_000).unwrap();
        assert_eq!(r.evaluations, 232);
        // Everything ties; the smallest vector is (0, 0, 1).
        assert_eq!(r.best_weights.as_slice(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn step_must_divide_one_and_fit_budget() {
        assert!(matches!(divisions(0.3), Err(Error::InvalidConfig(_))));
        assert_eq!(divisions(0.1).unwrap(), 10);
        assert!(matches!(
            brute_force(&|_: &[f64]| 0.0, 3, 0.05, 100),
            Err(Error::BudgetExceeded { points: 231, .. })
        ));
    }

    #[test]
    fn single_model_needs_one_evaluation() {
        let r = brute_force(&|_: &[f64]| 0.2, 1, 0.05, 10).unwrap();
        assert_eq!(r.evaluations, 1);
        assert_eq!(r.best_weights.as_slice(), &[1.0]);
    }
}
