//! Gradient-based optimizer (GBO): a Newton-inspired gradient search rule
//! plus the local escaping operator (LEO).

use std::f64::consts::PI;

use super::rng::{distinct_indices, other_index, Draws};
use super::{initial_population, Leaders, Objective, OptimizerConfig, RunContext, EPSILON};

/// Adaptive scale factor for iteration `it` (0-based) of `max_it`.
///
/// `beta` tapers from 1.2 towards 0.2 along a cubic schedule and the factor
/// is drawn uniformly from `[-alpha, alpha]`.
pub fn scale_factor<D: Draws + ?Sized>(it: usize, max_it: usize, draws: &mut D) -> f64 {
    let alpha = scale_amplitude(it, max_it);
    alpha * (2.0 * draws.rand() - 1.0)
}

/// `alpha = |beta * sin(3pi/2 + sin(3pi*beta/2))|`.
pub fn scale_amplitude(it: usize, max_it: usize) -> f64 {
    let progress = (it + 1) as f64 / max_it as f64;
    let beta = 0.2 + (1.0 - progress.powi(3)).powi(2);
    (beta * (1.5 * PI + (1.5 * PI * beta).sin()).sin()).abs()
}

/// The two gradient-search-rule points a candidate can move to.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientMoves {
    /// Move anchored at the candidate itself.
    pub x1: Vec<f64>,
    /// Move anchored at the best solution.
    pub x2: Vec<f64>,
}

/// Builds both gradient-search-rule moves for candidate `i`.
///
/// `a` holds four distinct member indices, none equal to `i`. Per dimension
/// the draws are consumed in this order: `rand` (eta), `rand` (delta),
/// `rand` (direction), `randn` (u), four `rand` (y1 pair then y2 pair),
/// `randn` (x1), `randn` (x2), `rand` (x2 difference term).
pub fn gradient_moves<D: Draws + ?Sized>(
    pop: &[Vec<f64>],
    i: usize,
    leaders: &Leaders,
    a: [usize; 4],
    f1: f64,
    f2: f64,
    draws: &mut D,
) -> GradientMoves {
    let x = &pop[i];
    let d = x.len();
    let mut x1 = Vec::with_capacity(d);
    let mut x2 = Vec::with_capacity(d);
    for j in 0..d {
        let xi = x[j];
        let best = leaders.best[j];
        let worst = leaders.worst[j];
        let mean = a.iter().map(|&k| pop[k][j]).sum::<f64>() / 4.0;

        let eta = 2.0 * draws.rand() * (mean - xi).abs();
        let chi = ((best - xi) + eta) / 2.0;
        let delta = draws.rand() * chi.abs();
        let dm = draws.rand() * f2 * (best - xi);
        let u = xi - draws.randn() * 2.0 * delta * xi / (worst - best + EPSILON) + dm;

        let mid = (u + xi) / 2.0;
        let y1 = draws.rand() * (mid + draws.rand() * delta);
        let y2 = draws.rand() * (mid - draws.rand() * delta);
        let gsr_scale = f1 * 2.0 * delta * xi / (y1 - y2 + EPSILON);

        x1.push(xi - draws.randn() * gsr_scale + dm);
        let gsr2 = draws.randn() * gsr_scale;
        x2.push(best - gsr2 + draws.rand() * f2 * (pop[a[0]][j] - pop[a[1]][j]));
    }
    GradientMoves { x1, x2 }
}

/// Full gradient-search step for candidate `i`: both moves plus the blended
/// next position `r1 (r2 X1 + (1 - r2) X2) + (1 - r1) X3` with
/// `X3 = x_i - F1 (X1 - X2)`. `r1`, `r2` are drawn per dimension after the
/// moves. The result is not clamped.
pub fn gbo_candidate_update<D: Draws + ?Sized>(
    pop: &[Vec<f64>],
    i: usize,
    leaders: &Leaders,
    a: [usize; 4],
    f1: f64,
    f2: f64,
    draws: &mut D,
) -> (GradientMoves, Vec<f64>) {
    let moves = gradient_moves(pop, i, leaders, a, f1, f2, draws);
    let blended = (0..pop[i].len())
        .map(|j| {
            let x3 = pop[i][j] - f1 * (moves.x1[j] - moves.x2[j]);
            let r1 = draws.rand();
            let r2 = draws.rand();
            r1 * (r2 * moves.x1[j] + (1.0 - r2) * moves.x2[j]) + (1.0 - r1) * x3
        })
        .collect();
    (moves, blended)
}

/// Local escaping operator.
///
/// Draw order: gate `rand < pr`; coin; shared `rand1`; the three theta draws
/// (only when `rand1 < 0.5`); `mu1`, `mu2`; the index of `x_r`. All are
/// scalars per candidate.
#[allow(clippy::too_many_arguments)]
pub fn leo<D: Draws + ?Sized>(
    pop: &[Vec<f64>],
    i: usize,
    candidate: &[f64],
    moves: &GradientMoves,
    leaders: &Leaders,
    a: [usize; 4],
    f1: f64,
    pr: f64,
    draws: &mut D,
) -> Vec<f64> {
    if draws.rand() >= pr {
        return candidate.to_vec();
    }
    let around_candidate = draws.rand() < 0.5;
    let (t1, t2, t3) = leo_thetas(draws);
    let mu1 = 2.0 * draws.rand() - 1.0;
    let mu2 = 2.0 * draws.rand() - 1.0;
    let r = other_index(draws, pop.len(), i);
    (0..candidate.len())
        .map(|j| {
            let xl = mu1 * (t1 * leaders.best[j] - t2 * pop[r][j])
                + mu2 * f1 * (t3 * (moves.x2[j] - moves.x1[j]) + t2 * (pop[a[0]][j] - pop[a[1]][j])) / 2.0;
            let anchor = if around_candidate { candidate[j] } else { leaders.best[j] };
            anchor + xl
        })
        .collect()
}

/// `(theta1, theta2, theta3)`: random weights when the shared draw is below
/// one half, otherwise exactly one each.
pub fn leo_thetas<D: Draws + ?Sized>(draws: &mut D) -> (f64, f64, f64) {
    if draws.rand() < 0.5 {
        let t1 = 2.0 * draws.rand();
        let t2 = draws.rand();
        let t3 = draws.rand();
        (t1, t2, t3)
    } else {
        (1.0, 1.0, 1.0)
    }
}

pub(crate) fn run<O: Objective + ?Sized, D: Draws + ?Sized>(
    ctx: &mut RunContext<'_, O>,
    cfg: &OptimizerConfig,
    draws: &mut D,
) {
    let n = cfg.population;
    let mut pop = initial_population(ctx.space(), n, draws);
    let mut fitness = ctx.evaluate_all(&mut pop);
    for it in 0..cfg.max_iterations {
        let leaders = Leaders::from_population(&pop, &fitness, Some(ctx.best()));
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let f1 = scale_factor(it, cfg.max_iterations, draws);
            let f2 = scale_factor(it, cfg.max_iterations, draws);
            let a: [usize; 4] = distinct_indices(draws, n, i);
            let (moves, blended) = gbo_candidate_update(&pop, i, &leaders, a, f1, f2, draws);
            next.push(leo(&pop, i, &blended, &moves, &leaders, a, f1, cfg.gbo.pr, draws));
        }
        let trial_fitness = ctx.evaluate_all(&mut next);
        cfg.gbo.selection.apply(&mut pop, &mut fitness, next, trial_fitness);
        ctx.end_iteration();
    }
}
