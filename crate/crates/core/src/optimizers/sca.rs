//! Sine cosine algorithm.

use std::f64::consts::PI;

use super::rng::Draws;
use super::{initial_population, Objective, OptimizerConfig, RunContext};

pub(crate) fn run<O: Objective + ?Sized, D: Draws + ?Sized>(
    ctx: &mut RunContext<'_, O>,
    cfg: &OptimizerConfig,
    draws: &mut D,
) {
    let n = cfg.population;
    let max_it = cfg.max_iterations;
    let mut pos = initial_population(ctx.space(), n, draws);
    ctx.evaluate_all(&mut pos);

    for it in 0..max_it {
        let r1 = cfg.sca.a * (1.0 - it as f64 / max_it as f64);
        let dest = ctx.best().0.to_vec();
        for x in pos.iter_mut() {
            for j in 0..x.len() {
                let r2 = 2.0 * PI * draws.rand();
                let r3 = 2.0 * draws.rand();
                let r4 = draws.rand();
                let dist = (r3 * dest[j] - x[j]).abs();
                x[j] += if r4 < 0.5 { r1 * r2.sin() * dist } else { r1 * r2.cos() * dist };
            }
        }
        ctx.evaluate_all(&mut pos);
        ctx.end_iteration();
    }
}
