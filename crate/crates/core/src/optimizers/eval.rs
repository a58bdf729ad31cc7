use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fusion::normalize_slice;

/// Error assigned to candidates that cannot be normalized.
pub(crate) const INFEASIBLE_ERROR: f64 = 1.0;

/// Best-so-far error after `evaluation` objective calls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub evaluation: usize,
    pub best_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Space {
    /// Candidates are normalized onto the unit simplex before scoring.
    Simplex,
    /// Candidates are scored as-is.
    Box,
}

struct Incumbent {
    point: Vec<f64>,
    raw: Vec<f64>,
    value: f64,
}

/// Budgeted objective wrapper that tracks the incumbent and the trace.
pub(crate) struct Evaluator<'a> {
    f: &'a (dyn Fn(&[f64]) -> f64 + Sync),
    space: Space,
    budget: usize,
    evaluations: usize,
    best: Option<Incumbent>,
    trace: Vec<TracePoint>,
}

/// Lexicographic order on points; NaN never occurs in feasible candidates.
pub(crate) fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Orders `(value, point)` pairs: smaller value first, then smaller point.
pub(crate) fn rank_cmp(va: f64, pa: &[f64], vb: f64, pb: &[f64]) -> Ordering {
    va.total_cmp(&vb).then_with(|| lex_cmp(pa, pb))
}

impl<'a> Evaluator<'a> {
    pub fn new(f: &'a (dyn Fn(&[f64]) -> f64 + Sync), space: Space, budget: usize) -> Self {
        Self {
            f,
            space,
            budget,
            evaluations: 0,
            best: None,
            trace: Vec::new(),
        }
    }

    pub fn remaining(&self) -> usize {
        self.budget - self.evaluations
    }

    fn project(&self, raw: &[f64]) -> Option<Vec<f64>> {
        match self.space {
            Space::Simplex => normalize_slice(raw).ok(),
            Space::Box => Some(raw.to_vec()),
        }
    }

    /// Number of budget units `raw` would consume.
    fn cost(&self, raw: &[f64]) -> usize {
        match self.space {
            Space::Simplex if raw.iter().all(|&x| x == 0.0) => 0,
            _ => 1,
        }
    }

    fn score(&self, raw: &[f64]) -> (Option<Vec<f64>>, f64) {
        match self.project(raw) {
            Some(p) => {
                let v = (self.f)(&p);
                (Some(p), v)
            }
            None => (None, INFEASIBLE_ERROR),
        }
    }

    fn record(&mut self, raw: &[f64], point: Option<Vec<f64>>, value: f64) {
        let Some(point) = point else { return };
        self.evaluations += 1;
        let better = match &self.best {
            None => true,
            Some(b) => rank_cmp(value, &point, b.value, &b.point) == Ordering::Less,
        };
        if !better {
            return;
        }
        let improved = self.best.as_ref().is_none_or(|b| value < b.value);
        self.best = Some(Incumbent {
            point,
            raw: raw.to_vec(),
            value,
        });
        if improved {
            self.trace.push(TracePoint {
                evaluation: self.evaluations,
                best_error: value,
            });
        }
    }

    /// Scores one candidate, or returns `None` once the budget is spent.
    pub fn eval(&mut self, raw: &[f64]) -> Option<f64> {
        if self.cost(raw) > self.remaining() {
            return None;
        }
        let (point, value) = self.score(raw);
        self.record(raw, point, value);
        Some(value)
    }

    /// Scores a batch, in parallel, reducing in submission order. Returns
    /// `None` without evaluating anything if the batch exceeds the budget.
    pub fn eval_batch(&mut self, raws: &[Vec<f64>]) -> Option<Vec<f64>> {
        let cost: usize = raws.iter().map(|r| self.cost(r)).sum();
        if cost > self.remaining() {
            return None;
        }
        let scored: Vec<(Option<Vec<f64>>, f64)> = if raws.len() >= 8 {
            raws.par_iter().map(|r| self.score(r)).collect()
        } else {
            raws.iter().map(|r| self.score(r)).collect()
        };
        let mut values = Vec::with_capacity(raws.len());
        for (raw, (point, value)) in raws.iter().zip(scored) {
            self.record(raw, point, value);
            values.push(value);
        }
        Some(values)
    }

    pub fn best_raw(&self) -> Option<&[f64]> {
        self.best.as_ref().map(|b| b.raw.as_slice())
    }

    pub fn best_value(&self) -> Option<f64> {
        self.best.as_ref().map(|b| b.value)
    }

    /// Best point, its value, the evaluation count and the trace. A run that
    /// never scored a feasible candidate falls back to equal weights.
    pub fn finish(mut self, dim: usize) -> (Vec<f64>, f64, usize, Vec<TracePoint>) {
        if self.best.is_none() {
            let equal = super::equal_point(dim);
            let (point, value) = self.score(&equal);
            self.record(&equal, point, value);
        }
        let best = self.best.expect("incumbent exists");
        (best.point, best.value, self.evaluations, self.trace)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_prefer_lexicographically_smaller_points() {
        let f = |_: &[f64]| 0.5;
        let mut ev = Evaluator::new(&f, Space::Box, 10);
        ev.eval(&[0.6, 0.4]);
        ev.eval(&[0.2, 0.9]);
        ev.eval(&[0.3, 0.1]);
        assert_eq!(ev.best_raw().unwrap(), &[0.2, 0.9]);
        let (_, _, n, trace) = ev.finish(2);
        assert_eq!(n, 3);
        assert_eq!(trace.len(), 1);
    }

    #[test]
    fn zero_vectors_are_not_evaluated() {
        let f = |_: &[f64]| -> f64 { panic!("must not be called") };
        let mut ev = Evaluator::new(&f, Space::Simplex, 1);
        assert_eq!(ev.eval(&[0.0, 0.0]), Some(INFEASIBLE_ERROR));
        assert_eq!(ev.remaining(), 1);
        assert!(ev.best_value().is_none());
    }

    #[test]
    fn batches_match_serial_evaluation() {
        let f = |w: &[f64]| ((w[0] * 7.0).sin() * 1e3).round() / 1e3;
        let pts: Vec<Vec<f64>> = (0..40).map(|i| vec![i as f64 / 40.0, 0.5]).collect();
        let mut serial = Evaluator::new(&f, Space::Simplex, 100);
        for p in &pts {
            serial.eval(p);
        }
        let mut batch = Evaluator::new(&f, Space::Simplex, 100);
        batch.eval_batch(&pts).unwrap();
        assert_eq!(serial.finish(2), batch.finish(2));
    }

    #[test]
    fn batch_over_budget_is_refused() {
        let f = |_: &[f64]| 0.0;
        let mut ev = Evaluator::new(&f, Space::Box, 3);
        assert!(ev.eval_batch(&vec![vec![0.5]; 4]).is_none());
        assert_eq!(ev.remaining(), 3);
        assert!(ev.eval_batch(&vec![vec![0.5]; 3]).is_some());
        assert!(ev.eval(&[0.1]).is_none());
    }
}
