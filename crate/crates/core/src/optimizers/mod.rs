//! Bounded population-based minimisation.
//!
//! Every algorithm shares the same contract: uniform initialisation inside the
//! box, one batch of `population` evaluations per iteration, clamping before
//! every evaluation, and a best-so-far curve of length `max_iterations`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::space::SearchSpace;

mod choa;
pub mod egbo;
pub mod gbo;
mod gwo;
mod pso;
pub mod rng;
mod sca;

pub use rng::{Draws, RngStream, ScriptedDraws};

/// Guard added to every denominator of the gradient search rule.
pub const EPSILON: f64 = 1e-8;

/// A box-constrained minimisation problem. Lower is better.
pub trait Objective {
    fn space(&self) -> &SearchSpace;

    /// Must be deterministic for a given input.
    fn evaluate(&self, x: &[f64]) -> f64;

    fn dim(&self) -> usize {
        self.space().dim()
    }
}

impl<T: Objective + ?Sized> Objective for &T {
    fn space(&self) -> &SearchSpace {
        (**self).space()
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        (**self).evaluate(x)
    }
}

/// Wraps a closure as an [`Objective`].
pub struct FnObjective<F> {
    space: SearchSpace,
    f: F,
}

impl<F: Fn(&[f64]) -> f64> FnObjective<F> {
    pub fn new(space: SearchSpace, f: F) -> Self {
        Self { space, f }
    }
}

impl<F: Fn(&[f64]) -> f64> Objective for FnObjective<F> {
    fn space(&self) -> &SearchSpace {
        &self.space
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Egbo,
    Gbo,
    Pso,
    Gwo,
    Sca,
    Choa,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Egbo,
        Algorithm::Gbo,
        Algorithm::Pso,
        Algorithm::Gwo,
        Algorithm::Sca,
        Algorithm::Choa,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Algorithm::Egbo => "egbo",
            Algorithm::Gbo => "gbo",
            Algorithm::Pso => "pso",
            Algorithm::Gwo => "gwo",
            Algorithm::Sca => "sca",
            Algorithm::Choa => "choa",
        }
    }

    /// Smallest population the update rule can work with.
    pub fn min_population(self) -> usize {
        match self {
            // Four distinct random members other than the candidate itself.
            Algorithm::Egbo | Algorithm::Gbo => 6,
            Algorithm::Gwo | Algorithm::Choa => 4,
            Algorithm::Pso | Algorithm::Sca => 2,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Algorithm::ALL
            .into_iter()
            .find(|a| a.label() == lower)
            .ok_or_else(|| {
                invalid(
                    "algorithm",
                    format!("unknown algorithm `{s}` (expected one of egbo, gbo, pso, gwo, sca, choa)"),
                )
            })
    }
}

/// How a trial vector takes over its parent's slot.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    /// The trial always replaces the parent; the run-wide best is tracked separately.
    #[default]
    Replace,
    /// The trial replaces the parent only if it is strictly better.
    Greedy,
}

impl Selection {
    /// Applies the policy to `pop`/`fitness` in place.
    pub(crate) fn apply(self, pop: &mut [Vec<f64>], fitness: &mut [f64], trials: Vec<Vec<f64>>, trial_fitness: Vec<f64>) {
        for (i, (x, f)) in trials.into_iter().zip(trial_fitness).enumerate() {
            if self == Selection::Replace || f < fitness[i] {
                pop[i] = x;
                fitness[i] = f;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GboParams {
    /// Probability of applying the local escaping operator.
    pub pr: f64,
    pub selection: Selection,
}

impl Default for GboParams {
    fn default() -> Self {
        Self { pr: 0.5, selection: Selection::Replace }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EgboParams {
    /// Initial state of the logistic map that gates the modified escaping operator.
    pub lc0: f64,
    /// Greedy by default: the rank-scaled factors reach 1 for the worst
    /// members, and with plain replacement the population never contracts.
    pub selection: Selection,
}

impl Default for EgboParams {
    fn default() -> Self {
        Self { lc0: 0.7, selection: Selection::Greedy }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoParams {
    pub w_max: f64,
    pub w_min: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self { w_max: 0.9, w_min: 0.2, c1: 2.0, c2: 2.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScaParams {
    pub a: f64,
}

impl Default for ScaParams {
    fn default() -> Self {
        Self { a: 2.0 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GwoParams {}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChoaParams {}

/// Budget, seed and per-algorithm settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerConfig {
    pub population: usize,
    pub max_iterations: usize,
    pub seed: u64,
    pub gbo: GboParams,
    pub egbo: EgboParams,
    pub pso: PsoParams,
    pub sca: ScaParams,
    pub gwo: GwoParams,
    pub choa: ChoaParams,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            population: 100,
            max_iterations: 500,
            seed: 0,
            gbo: GboParams::default(),
            egbo: EgboParams::default(),
            pso: PsoParams::default(),
            sca: ScaParams::default(),
            gwo: GwoParams::default(),
            choa: ChoaParams::default(),
        }
    }
}

impl OptimizerConfig {
    pub fn with_budget(mut self, population: usize, max_iterations: usize) -> Self {
        self.population = population;
        self.max_iterations = max_iterations;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Checks the settings every algorithm relies on.
    pub fn validate(&self) -> Result<()> {
        if self.population == 0 {
            return Err(invalid("optimizers.population", "must be >= 1"));
        }
        if self.max_iterations == 0 {
            return Err(invalid("optimizers.max_iterations", "must be >= 1"));
        }
        if !(0.0..=1.0).contains(&self.gbo.pr) {
            return Err(invalid("optimizers.gbo.pr", "must lie in [0, 1]"));
        }
        if !(self.egbo.lc0 > 0.0 && self.egbo.lc0 < 1.0) {
            return Err(invalid("optimizers.egbo.lc0", "must lie in (0, 1)"));
        }
        let p = &self.pso;
        if ![p.w_max, p.w_min, p.c1, p.c2].iter().all(|v| v.is_finite() && *v >= 0.0) || p.w_min > p.w_max {
            return Err(invalid("optimizers.pso", "need finite non-negative w_min <= w_max, c1, c2"));
        }
        if !(self.sca.a.is_finite() && self.sca.a > 0.0) {
            return Err(invalid("optimizers.sca.a", "must be finite and > 0"));
        }
        Ok(())
    }

    /// [`validate`](Self::validate) plus the algorithm's population minimum.
    pub fn validate_for(&self, algorithm: Algorithm) -> Result<()> {
        self.validate()?;
        let min = algorithm.min_population();
        if self.population < min {
            return Err(Error::Config(format!(
                "{algorithm} needs a population of at least {min}, got {}",
                self.population
            )));
        }
        Ok(())
    }
}

/// Outcome of one optimisation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub algorithm: Algorithm,
    pub seed: u64,
    /// Best fitness found up to and including each iteration.
    pub curve: Vec<f64>,
    pub final_gains: Vec<f64>,
    pub final_fitness: f64,
    pub wall_time: f64,
    pub evaluations: u64,
}

impl RunTrace {
    /// The trace with `wall_time` zeroed, for bitwise comparisons.
    pub fn without_timing(mut self) -> Self {
        self.wall_time = 0.0;
        self
    }
}

/// Runs `algorithm` on `objective`.
pub fn run<O: Objective + ?Sized>(algorithm: Algorithm, objective: &O, cfg: &OptimizerConfig) -> Result<RunTrace> {
    cfg.validate_for(algorithm)?;
    objective.space().validate()?;
    let start = Instant::now();
    let mut draws = RngStream::new(cfg.seed);
    let mut ctx = RunContext::new(objective, cfg.max_iterations);
    match algorithm {
        Algorithm::Gbo => gbo::run(&mut ctx, cfg, &mut draws),
        Algorithm::Egbo => egbo::run(&mut ctx, cfg, &mut draws),
        Algorithm::Pso => pso::run(&mut ctx, cfg, &mut draws),
        Algorithm::Gwo => gwo::run(&mut ctx, cfg, &mut draws),
        Algorithm::Sca => sca::run(&mut ctx, cfg, &mut draws),
        Algorithm::Choa => choa::run(&mut ctx, cfg, &mut draws),
    }
    let (best, best_fit) = ctx.best.expect("at least one evaluation");
    Ok(RunTrace {
        algorithm,
        seed: cfg.seed,
        curve: ctx.curve,
        final_gains: best,
        final_fitness: best_fit,
        wall_time: start.elapsed().as_secs_f64(),
        evaluations: ctx.evaluations,
    })
}

/// Evaluation bookkeeping shared by all algorithms: clamps, counts and keeps
/// the best point seen so far.
pub(crate) struct RunContext<'a, O: ?Sized> {
    objective: &'a O,
    best: Option<(Vec<f64>, f64)>,
    curve: Vec<f64>,
    evaluations: u64,
}

impl<'a, O: Objective + ?Sized> RunContext<'a, O> {
    fn new(objective: &'a O, max_iterations: usize) -> Self {
        Self {
            objective,
            best: None,
            curve: Vec::with_capacity(max_iterations),
            evaluations: 0,
        }
    }

    pub(crate) fn space(&self) -> &SearchSpace {
        self.objective.space()
    }

    /// Clamps `x` in place, evaluates it and updates the best-so-far.
    pub(crate) fn evaluate(&mut self, x: &mut [f64]) -> f64 {
        self.objective.space().clamp_in_place(x);
        let mut f = self.objective.evaluate(x);
        if f.is_nan() {
            f = f64::INFINITY;
        }
        self.evaluations += 1;
        if self.best.as_ref().is_none_or(|(_, b)| f < *b) {
            self.best = Some((x.to_vec(), f));
        }
        f
    }

    pub(crate) fn evaluate_all(&mut self, xs: &mut [Vec<f64>]) -> Vec<f64> {
        xs.iter_mut().map(|x| self.evaluate(x)).collect()
    }

    pub(crate) fn best(&self) -> (&[f64], f64) {
        let (x, f) = self.best.as_ref().expect("population evaluated");
        (x, *f)
    }

    /// Closes an iteration by appending the best-so-far to the curve.
    pub(crate) fn end_iteration(&mut self) {
        let f = self.best().1;
        self.curve.push(f);
    }
}

/// Uniform initial population inside the box.
pub(crate) fn initial_population<D: Draws + ?Sized>(space: &SearchSpace, n: usize, draws: &mut D) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            space
                .lower
                .iter()
                .zip(&space.upper)
                .map(|(lo, hi)| lo + draws.rand() * (hi - lo))
                .collect()
        })
        .collect()
}

/// Indices of `fitness` sorted ascending (stable, NaN-safe).
pub(crate) fn ascending_order(fitness: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..fitness.len()).collect();
    idx.sort_by(|a, b| fitness[*a].total_cmp(&fitness[*b]));
    idx
}

/// Reference points for one iteration, snapshotted before any candidate moves.
#[derive(Debug, Clone, PartialEq)]
pub struct Leaders {
    pub best: Vec<f64>,
    pub second: Vec<f64>,
    pub third: Vec<f64>,
    pub worst: Vec<f64>,
}

impl Leaders {
    /// Leaders of a population; the run-wide elite takes first place when it
    /// beats every current member, pushing the population's top two down.
    pub fn from_population(pop: &[Vec<f64>], fitness: &[f64], elite: Option<(&[f64], f64)>) -> Self {
        let order = ascending_order(fitness);
        let at = |k: usize| pop[order[k.min(order.len() - 1)]].clone();
        let worst = pop[*order.last().unwrap()].clone();
        match elite {
            Some((x, f)) if f < fitness[order[0]] => Self {
                best: x.to_vec(),
                second: at(0),
                third: at(1),
                worst,
            },
            _ => Self { best: at(0), second: at(1), third: at(2), worst },
        }
    }
}

/// Keeps the `k` best distinct points ever evaluated (GWO wolves, ChOA chimps).
#[derive(Debug, Clone)]
pub(crate) struct Archive {
    k: usize,
    members: Vec<(Vec<f64>, f64)>,
}

impl Archive {
    pub(crate) fn new(k: usize) -> Self {
        Self { k, members: Vec::with_capacity(k + 1) }
    }

    pub(crate) fn offer(&mut self, x: &[f64], f: f64) {
        if self.members.len() == self.k && f >= self.members[self.k - 1].1 {
            return;
        }
        if self.members.iter().any(|(m, _)| m == x) {
            return;
        }
        let pos = self.members.partition_point(|(_, g)| *g <= f);
        self.members.insert(pos, (x.to_vec(), f));
        self.members.truncate(self.k);
    }

    pub(crate) fn get(&self, rank: usize) -> &[f64] {
        &self.members[rank.min(self.members.len() - 1)].0
    }
}
