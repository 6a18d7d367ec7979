//! Grey wolf optimizer.

use super::rng::Draws;
use super::{initial_population, Archive, Objective, OptimizerConfig, RunContext};

pub(crate) fn run<O: Objective + ?Sized, D: Draws + ?Sized>(
    ctx: &mut RunContext<'_, O>,
    cfg: &OptimizerConfig,
    draws: &mut D,
) {
    let n = cfg.population;
    let max_it = cfg.max_iterations;
    let mut pos = initial_population(ctx.space(), n, draws);
    let fit = ctx.evaluate_all(&mut pos);
    // Alpha, beta and delta are the three best wolves ever seen.
    let mut wolves = Archive::new(3);
    for (x, f) in pos.iter().zip(&fit) {
        wolves.offer(x, *f);
    }

    for it in 0..max_it {
        let a = 2.0 * (1.0 - it as f64 / max_it as f64);
        for x in pos.iter_mut() {
            for (j, xj) in x.iter_mut().enumerate() {
                let mut sum = 0.0;
                for rank in 0..3 {
                    let leader = wolves.get(rank)[j];
                    let big_a = 2.0 * a * draws.rand() - a;
                    let c = 2.0 * draws.rand();
                    sum += leader - big_a * (c * leader - *xj).abs();
                }
                *xj = sum / 3.0;
            }
        }
        for x in pos.iter_mut() {
            let f = ctx.evaluate(x);
            wolves.offer(x, f);
        }
        ctx.end_iteration();
    }
}
