//! Enhanced GBO: rank-adaptive scale factors, rank-driven crossover and a
//! chaotically gated modified escaping operator (MLEO).

use super::gbo::gradient_moves;
use super::rng::{distinct_indices, other_index, Draws};
use super::{ascending_order, initial_population, Leaders, Objective, OptimizerConfig, RunContext};

/// Scale factors `(F1, F2)` for the candidate at 1-based `rank` in a
/// population of `n` sorted ascending by fitness.
///
/// With probability one half both factors use fresh random ranks
/// (`a/N + 0.1 randn`), otherwise the candidate's own rank (`rank/N + 0.1 randn`).
/// Draw order: branch `rand`; `index` for `a1`, `a2` when taken; `randn` for F1, F2.
pub fn rank_adaptive_params<D: Draws + ?Sized>(rank: usize, n: usize, draws: &mut D) -> (f64, f64) {
    let nf = n as f64;
    if draws.rand() < 0.5 {
        let a1 = (draws.index(n) + 1) as f64;
        let a2 = (draws.index(n) + 1) as f64;
        (a1 / nf + 0.1 * draws.randn(), a2 / nf + 0.1 * draws.randn())
    } else {
        let base = rank as f64 / nf;
        (base + 0.1 * draws.randn(), base + 0.1 * draws.randn())
    }
}

/// Rank-driven crossover with rate `pc = rank/N + 0.1 randn`.
pub fn egbo_crossover<D: Draws + ?Sized>(
    current: &[f64],
    x1: &[f64],
    x2: &[f64],
    rank: usize,
    n: usize,
    draws: &mut D,
) -> Vec<f64> {
    let pc = rank as f64 / n as f64 + 0.1 * draws.randn();
    crossover_with_rate(current, x1, x2, pc, draws)
}

/// Crossover with an explicit rate. A forced dimension `j_rand` is drawn
/// first; then per dimension a `rand < pc` test and, when the gene is
/// replaced, a coin choosing `x1` (`< 0.5`) or `x2`.
pub fn crossover_with_rate<D: Draws + ?Sized>(current: &[f64], x1: &[f64], x2: &[f64], pc: f64, draws: &mut D) -> Vec<f64> {
    let j_rand = draws.index(current.len());
    (0..current.len())
        .map(|j| {
            if draws.rand() < pc || j == j_rand {
                if draws.rand() < 0.5 {
                    x1[j]
                } else {
                    x2[j]
                }
            } else {
                current[j]
            }
        })
        .collect()
}

/// Logistic map `4 lc (1 - lc)`.
pub fn logistic_map(lc: f64) -> f64 {
    4.0 * lc * (1.0 - lc)
}

/// Modified escaping operator.
///
/// Gate `rand < lc`; then `rand < 0.5 (1 - it/max_it)` picks the exploring
/// move anchored at the third best, otherwise the move anchored at the best:
/// `anchor + F1 (x_best2 - x_r) + F2 (x_a1 - x_a2)`. `it` is 0-based.
#[allow(clippy::too_many_arguments)]
pub fn mleo<D: Draws + ?Sized>(
    pop: &[Vec<f64>],
    i: usize,
    candidate: &[f64],
    it: usize,
    max_it: usize,
    lc: f64,
    leaders: &Leaders,
    a: [usize; 2],
    f1: f64,
    f2: f64,
    draws: &mut D,
) -> Vec<f64> {
    if draws.rand() >= lc {
        return candidate.to_vec();
    }
    let explore = draws.rand() < 0.5 * (1.0 - it as f64 / max_it as f64);
    let anchor = if explore { &leaders.third } else { &leaders.best };
    let r = other_index(draws, pop.len(), i);
    (0..candidate.len())
        .map(|j| anchor[j] + f1 * (leaders.second[j] - pop[r][j]) + f2 * (pop[a[0]][j] - pop[a[1]][j]))
        .collect()
}

pub(crate) fn run<O: Objective + ?Sized, D: Draws + ?Sized>(
    ctx: &mut RunContext<'_, O>,
    cfg: &OptimizerConfig,
    draws: &mut D,
) {
    let n = cfg.population;
    let max_it = cfg.max_iterations;
    let mut pop = initial_population(ctx.space(), n, draws);
    let mut fitness = ctx.evaluate_all(&mut pop);
    let mut lc = cfg.egbo.lc0;
    for it in 0..max_it {
        let order = ascending_order(&fitness);
        pop = order.iter().map(|&k| pop[k].clone()).collect();
        fitness = order.iter().map(|&k| fitness[k]).collect();
        let leaders = Leaders::from_population(&pop, &fitness, Some(ctx.best()));

        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let rank = i + 1;
            let (f1, f2) = rank_adaptive_params(rank, n, draws);
            let a: [usize; 4] = distinct_indices(draws, n, i);
            let moves = gradient_moves(&pop, i, &leaders, a, f1, f2, draws);
            let crossed = egbo_crossover(&pop[i], &moves.x1, &moves.x2, rank, n, draws);
            next.push(mleo(&pop, i, &crossed, it, max_it, lc, &leaders, [a[0], a[1]], f1, f2, draws));
        }
        lc = logistic_map(lc);

        let trial_fitness = ctx.evaluate_all(&mut next);
        cfg.egbo.selection.apply(&mut pop, &mut fitness, next, trial_fitness);
        ctx.end_iteration();
    }
}
