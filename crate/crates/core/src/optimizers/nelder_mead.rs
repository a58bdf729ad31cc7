//! Nelder–Mead simplex search in the raw box `[0, 1]^M`.
//!
//! The simplex always holds `M + 1` vertices. Trial points are clamped to
//! the box.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::eval::{rank_cmp, Evaluator};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NelderMeadParams {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    pub initial_offset: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for NelderMeadParams {
    fn default() -> Self {
        Self {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            initial_offset: 0.1,
            tolerance: 1e-6,
            max_iterations: 200,
        }
    }
}

impl NelderMeadParams {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvalidConfig(format!("nelder-mead {m}")));
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return fail("tolerance must be positive");
        }
        if self.reflection.is_nan() || self.reflection <= 0.0 {
            return fail("reflection must be positive");
        }
        if !(self.expansion > 1.0 && self.expansion > self.reflection) {
            return fail("expansion must exceed 1 and the reflection coefficient");
        }
        if !(self.contraction > 0.0 && self.contraction < 1.0) {
            return fail("contraction must lie in (0, 1)");
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return fail("shrink must lie in (0, 1)");
        }
        if !(self.initial_offset > 0.0 && self.initial_offset <= 1.0) {
            return fail("initial_offset must lie in (0, 1]");
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Vertex {
    pub point: Vec<f64>,
    pub value: f64,
}

/// Observer hook used by tests to inspect the simplex after each iteration.
pub(crate) type Inspect<'a> = &'a mut dyn FnMut(&[Vertex]);

fn initial_simplex(dim: usize, offset: f64) -> Vec<Vec<f64>> {
    let x0 = super::equal_point(dim);
    let mut out = vec![x0.clone()];
    for i in 0..dim {
        let mut v = x0.clone();
        v[i] = if v[i] + offset <= 1.0 { v[i] + offset } else { v[i] - offset };
        out.push(v);
    }
    out
}

fn affine(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    // a + t (b - a)
    a.iter()
        .zip(b)
        .map(|(x, y)| (x + t * (y - x)).clamp(0.0, 1.0))
        .collect()
}

pub(crate) fn run(ev: &mut Evaluator<'_>, dim: usize, p: &NelderMeadParams) {
    run_inspected(ev, dim, p, &mut |_| {});
}

pub(crate) fn run_inspected(
    ev: &mut Evaluator<'_>,
    dim: usize,
    p: &NelderMeadParams,
    inspect: Inspect<'_>,
) {
    let points = initial_simplex(dim, p.initial_offset);
    let Some(values) = ev.eval_batch(&points) else {
        return;
    };
    let mut simplex: Vec<Vertex> = points
        .into_iter()
        .zip(values)
        .map(|(point, value)| Vertex { point, value })
        .collect();

    let sort = |s: &mut Vec<Vertex>| {
        s.sort_by(|a, b| rank_cmp(a.value, &a.point, b.value, &b.point));
    };

    for _ in 0..p.max_iterations {
        sort(&mut simplex);
        let best = simplex[0].value;
        let worst = simplex[dim].value;
        if worst - best < p.tolerance {
            break;
        }
        let second_worst = simplex[dim - 1].value;

        let mut centroid = vec![0.0; dim];
        for v in &simplex[..dim] {
            for (c, x) in centroid.iter_mut().zip(&v.point) {
                *c += x / dim as f64;
            }
        }
        let xw = simplex[dim].point.clone();

        // Reflection: c + alpha (c - xw)
        let xr = affine(&centroid, &xw, -p.reflection);
        let Some(fr) = ev.eval(&xr) else { return };

        let accepted = if fr < best {
            let xe = affine(&centroid, &xw, -p.expansion);
            let Some(fe) = ev.eval(&xe) else { return };
            Some(if fe < fr {
                Vertex { point: xe, value: fe }
            } else {
                Vertex { point: xr, value: fr }
            })
        } else if fr < second_worst {
            Some(Vertex { point: xr, value: fr })
        } else if fr < worst {
            let xc = affine(&centroid, &xr, p.contraction);
            let Some(fc) = ev.eval(&xc) else { return };
            (fc <= fr).then_some(Vertex { point: xc, value: fc })
        } else {
            let xc = affine(&centroid, &xw, p.contraction);
            let Some(fc) = ev.eval(&xc) else { return };
            (fc < worst).then_some(Vertex { point: xc, value: fc })
        };

        match accepted {
            Some(v) => simplex[dim] = v,
            None => {
                let xb = simplex[0].point.clone();
                let shrunk: Vec<Vec<f64>> = simplex[1..]
                    .iter()
                    .map(|v| affine(&xb, &v.point, p.shrink))
                    .collect();
                let Some(values) = ev.eval_batch(&shrunk) else { return };
                for (v, (point, value)) in simplex[1..].iter_mut().zip(shrunk.into_iter().zip(values)) {
                    *v = Vertex { point, value };
                }
            }
        }
        inspect(&simplex);
    }
}

#[cfg(test)]
mod tests {
    use super::super::eval::Space;
    use super::super::{optimize, Method, OptimizerConfig};
    use super::*;

    #[test]
    fn keeps_m_plus_one_vertices() {
        let f = |w: &[f64]| (w[0] - 0.1).powi(2) + (w[1] - 0.7).powi(2) + (w[2] - 0.2).powi(2);
        let mut ev = Evaluator::new(&f, Space::Simplex, 10_000);
        let mut iterations = 0;
        run_inspected(&mut ev, 3, &NelderMeadParams::default(), &mut |s| {
            iterations += 1;
            assert_eq!(s.len(), 4);
        });
        assert!(iterations > 0);
    }

    #[test]
    fn converges_on_convex_landscape() {
        let f = |x: &[f64]| (x[0] - 0.4).powi(2) + 2.0 * (x[1] - 0.55).powi(2) + 0.5 * (x[2] - 0.3).powi(2);
        let p = NelderMeadParams::default();
        let mut ev = Evaluator::new(&f, Space::Box, 10_000);
        let mut spread = f64::INFINITY;
        run_inspected(&mut ev, 3, &p, &mut |s| {
            let lo = s.iter().map(|v| v.value).fold(f64::INFINITY, f64::min);
            let hi = s.iter().map(|v| v.value).fold(f64::NEG_INFINITY, f64::max);
            spread = hi - lo;
        });
        assert!(spread < 1e-6, "{spread}");
    }

    #[test]
    fn single_model_returns_unit_weight() {
        let r = optimize(&|w: &[f64]| w[0] * 0.1, 1, &OptimizerConfig::new(Method::NelderMead, 0)).unwrap();
        assert_eq!(r.best_weights.as_slice(), &[1.0]);
    }

    #[test]
    fn invalid_tolerance_rejected() {
        let mut cfg = OptimizerConfig::new(Method::NelderMead, 0);
        cfg.params.nelder_mead.tolerance = 0.0;
        assert!(matches!(optimize(&|_: &[f64]| 0.0, 2, &cfg), Err(Error::InvalidConfig(_))));
    }
}
