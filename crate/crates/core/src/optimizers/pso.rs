//! Particle swarm optimisation with linearly decreasing inertia.

use super::rng::Draws;
use super::{initial_population, Objective, OptimizerConfig, RunContext};

/// Velocities are clamped to this fraction of each dimension's range.
const VELOCITY_FRACTION: f64 = 0.2;

pub(crate) fn run<O: Objective + ?Sized, D: Draws + ?Sized>(
    ctx: &mut RunContext<'_, O>,
    cfg: &OptimizerConfig,
    draws: &mut D,
) {
    let p = cfg.pso;
    let n = cfg.population;
    let max_it = cfg.max_iterations;
    let space = ctx.space().clone();
    let d = space.dim();
    let vmax: Vec<f64> = (0..d).map(|j| VELOCITY_FRACTION * space.width(j)).collect();

    let mut pos = initial_population(&space, n, draws);
    let fit = ctx.evaluate_all(&mut pos);
    let mut vel = vec![vec![0.0; d]; n];
    let mut pbest = pos.clone();
    let mut pbest_fit = fit;

    for it in 0..max_it {
        let w = if max_it > 1 {
            p.w_max - (p.w_max - p.w_min) * it as f64 / (max_it - 1) as f64
        } else {
            p.w_min
        };
        let gbest = ctx.best().0.to_vec();
        for i in 0..n {
            for j in 0..d {
                let r1 = draws.rand();
                let r2 = draws.rand();
                let v = w * vel[i][j] + p.c1 * r1 * (pbest[i][j] - pos[i][j]) + p.c2 * r2 * (gbest[j] - pos[i][j]);
                vel[i][j] = v.clamp(-vmax[j], vmax[j]);
                pos[i][j] += vel[i][j];
            }
        }
        for i in 0..n {
            let f = ctx.evaluate(&mut pos[i]);
            if f < pbest_fit[i] {
                pbest_fit[i] = f;
                pbest[i].clone_from(&pos[i]);
            }
        }
        ctx.end_iteration();
    }
}
