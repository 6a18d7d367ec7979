//! Chimp optimization algorithm.

use super::egbo::logistic_map;
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
    // Attacker, barrier, chaser and driver.
    let mut leaders = Archive::new(4);
    for (x, f) in pos.iter().zip(&fit) {
        leaders.offer(x, *f);
    }
    // Chaotic factor; start strictly inside (0, 1) away from the map's fixed points.
    let mut m = 0.05 + 0.9 * draws.rand();

    for it in 0..max_it {
        let f = 2.5 * (1.0 - it as f64 / max_it as f64);
        for x in pos.iter_mut() {
            for (j, xj) in x.iter_mut().enumerate() {
                let mut sum = 0.0;
                for rank in 0..4 {
                    let leader = leaders.get(rank)[j];
                    let a = 2.0 * f * draws.rand() - f;
                    let c = 2.0 * draws.rand();
                    m = logistic_map(m);
                    sum += leader - a * (c * leader - m * *xj).abs();
                }
                *xj = sum / 4.0;
            }
        }
        for x in pos.iter_mut() {
            let fx = ctx.evaluate(x);
            leaders.offer(x, fx);
        }
        ctx.end_iteration();
    }
}
