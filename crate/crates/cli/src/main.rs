//! `lfc`: simulate, tune and benchmark PID controllers for the two-area
//! load frequency control model, then analyse the results.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lfc_core::harness::{self, ResultStore, RunRecord};
use lfc_core::simulator::{self, LoadCase};
use lfc_core::stats::report::{self as stats_report, Outcome};
use lfc_core::{Algorithm, Config, Error, PidGains, Profile};

#[derive(Debug, Parser)]
#[command(name = "lfc", version, about = "PID tuning benchmark for two-area load frequency control")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Named budget profile: desk (N=50, 100 iterations, 5 runs) or full (N=100, 500 iterations, 30 runs).
    #[arg(long, global = true, default_value = "desk")]
    profile: Profile,

    /// TOML file layered over the profile defaults.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Override a single key, e.g. `--set plant.t12=0.01`. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    /// Where results are written (and read back by `stats` and `report`).
    #[arg(long, global = true, env = "LFC_OUTPUT_DIR", default_value = "results")]
    output_dir: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate one gain vector and write its trajectory.
    Simulate(SimulateArgs),
    /// Run one seeded optimization on one case.
    Tune(TuneArgs),
    /// Run the full algorithm x case x seed grid (resumable).
    Benchmark,
    /// Descriptive, Levene, Friedman, post-hoc and Wilcoxon reports from runs.csv.
    Stats(StatsArgs),
    /// Convergence series, after-k comparison and best-gain tables.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Load case (`case-1` .. `case-5`, or just the number).
    #[arg(long, default_value = "case-1")]
    case: String,

    /// Six comma-separated gains: kp1,ki1,kd1,kp2,ki2,kd2.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "run", required_unless_present = "run")]
    gains: Option<String>,

    /// Take the gains from a runs.csv row instead, as `ALGORITHM:SEED` for the chosen case.
    #[arg(long, value_name = "ALGORITHM:SEED")]
    run: Option<String>,

    /// runs.csv used by `--run` (defaults to the one in the output directory).
    #[arg(long, value_name = "FILE")]
    runs_file: Option<PathBuf>,

    /// Override the case's area-1 load step (pu).
    #[arg(long)]
    w1: Option<f64>,

    /// Override the case's area-2 load step (pu).
    #[arg(long)]
    w2: Option<f64>,

    /// Settling band as a fraction of each signal's peak.
    #[arg(long, default_value_t = 0.02)]
    band: f64,

    /// Trajectory CSV path (defaults to `<output-dir>/trajectory-case-N.csv`).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TuneArgs {
    algorithm: String,
    case: String,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct StatsArgs {
    /// Input runs.csv (defaults to the one in the output directory).
    #[arg(long, value_name = "FILE")]
    runs: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Case used for the after-k comparison (defaults to the lowest recorded case).
    #[arg(long)]
    case: Option<String>,

    /// Iteration for the after-k comparison (defaults to `plan.first_k`).
    #[arg(long)]
    first_k: Option<usize>,

    /// Directory holding runs.csv and convergence.csv (defaults to the output directory).
    #[arg(long, value_name = "DIR")]
    input: Option<PathBuf>,
}

/// Error plus the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Divergence { .. }
            | Error::DegenerateInput(_)
            | Error::AllTies
            | Error::TooFewPairs { .. }
            | Error::EmptyInput(_) => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    let c = &cli.common;
    let cfg = || -> Result<Config, Failure> { Ok(Config::load(c.profile, c.config.as_deref(), &c.overrides)?) };
    match cli.command {
        Command::Simulate(a) => simulate(&cfg()?, &c.output_dir, a),
        Command::Tune(a) => tune(&cfg()?, &c.output_dir, a),
        Command::Benchmark => benchmark(&cfg()?, &c.output_dir),
        Command::Stats(a) => stats(&c.output_dir, a),
        Command::Report(a) => report(&cfg()?, &c.output_dir, a),
    }
}

fn parse_case(cfg: &Config, s: &str) -> Result<LoadCase, Failure> {
    let id = LoadCase::parse(s)?.id;
    Ok(cfg.case(id)?)
}

fn parse_gains(s: &str) -> Result<PidGains, Failure> {
    let values = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| usage(format!("gain `{}` is not a number", v.trim()))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PidGains::from_slice(&values)?)
}

fn gains_from_run(file: &Path, entry: &str, case: u8) -> Result<PidGains, Failure> {
    let (alg, seed) = entry.split_once(':').ok_or_else(|| usage(format!("--run `{entry}` must look like ALGORITHM:SEED")))?;
    let alg: Algorithm = alg.parse()?;
    let seed: u64 = seed.parse().map_err(|_| usage(format!("seed `{seed}` is not an integer")))?;
    require(file)?;
    harness::read_runs_csv(file)?
        .into_iter()
        .find(|r| r.algorithm == alg && r.case == case && r.seed == seed)
        .map(|r| r.gains())
        .ok_or_else(|| usage(format!("no {alg} run with seed {seed} for case {case} in {}", file.display())))
}

fn require(path: &Path) -> CliResult {
    if path.exists() {
        Ok(())
    } else {
        Err(usage(format!("{} does not exist", path.display())))
    }
}

fn simulate(cfg: &Config, out_dir: &Path, a: SimulateArgs) -> CliResult {
    let mut case = parse_case(cfg, &a.case)?;
    case.w1 = a.w1.unwrap_or(case.w1);
    case.w2 = a.w2.unwrap_or(case.w2);
    let gains = match (&a.gains, &a.run) {
        (Some(g), _) => parse_gains(g)?,
        (None, Some(entry)) => {
            let file = a.runs_file.clone().unwrap_or_else(|| out_dir.join(harness::RUNS_FILE));
            gains_from_run(&file, entry, case.id)?
        }
        (None, None) => return Err(usage("either --gains or --run is required")),
    };

    let traj = simulator::simulate(&cfg.plant, &gains, &case, &cfg.sim)?;
    let itae = simulator::evaluate(&cfg.plant, &gains, &case, &cfg.sim)?;
    let metrics = simulator::settling_metrics(&traj, a.band)?;

    let path = a.out.unwrap_or_else(|| out_dir.join(format!("trajectory-{}.csv", case.label())));
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    simulator::write_trajectory_csv(&traj, &cfg.plant, BufWriter::new(File::create(&path)?))?;

    println!("{} (w1 = {}, w2 = {}), t_final = {} s, dt = {} s", case.label(), case.w1, case.w2, cfg.sim.t_final, cfg.sim.dt);
    println!("ITAE = {itae:.6}");
    println!("{:<6} {:>12} {:>12} {:>10}", "signal", "peak", "overshoot", "ts (s)");
    for (name, m) in ["x1", "x4", "x7"].iter().zip(metrics) {
        if m.defined {
            println!("{name:<6} {:>12.4e} {:>12.4e} {:>10.4}", m.peak, m.overshoot, m.settling_time);
        } else {
            println!("{name:<6} {:>12} {:>12} {:>10}", "0", "0", "-");
        }
    }
    println!("trajectory written to {}", path.display());
    Ok(())
}

fn tune(cfg: &Config, out_dir: &Path, a: TuneArgs) -> CliResult {
    let algorithm: Algorithm = a.algorithm.parse()?;
    let case = parse_case(cfg, &a.case)?;
    let seed = a.seed.unwrap_or(cfg.plan.base_seed);
    let cell = harness::CellKey { algorithm, case: case.id, seed };
    let trace = harness::run_cell(cfg, cell)?;

    fs::create_dir_all(out_dir)?;
    let path = out_dir.join(format!("tune-{algorithm}-{}-seed-{seed}.csv", case.label()));
    harness::write_trace_curve(&trace, case.id, BufWriter::new(File::create(&path)?))?;

    println!(
        "{algorithm} on {} (N = {}, {} iterations, seed {seed})",
        case.label(),
        cfg.optimizers.population,
        cfg.optimizers.max_iterations
    );
    println!("best ITAE = {:.6}", trace.final_fitness);
    for (label, g) in PidGains::LABELS.iter().zip(&trace.final_gains) {
        println!("{label} = {g:.6}");
    }
    println!("evaluations = {}", trace.evaluations);
    println!("convergence curve written to {}", path.display());
    eprintln!("wall time {:.2} s", trace.wall_time);
    Ok(())
}

fn benchmark(cfg: &Config, out_dir: &Path) -> CliResult {
    let total = harness::plan_cells(cfg).len();
    let done = std::sync::atomic::AtomicUsize::new(0);
    eprintln!("benchmark: {total} cells into {}", out_dir.display());
    let outcome = harness::run_experiment(cfg, out_dir, |r: &RunRecord| {
        let n = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
        eprintln!("[{n}] {} case-{} seed {}: ITAE {:.6} ({:.1} s)", r.algorithm, r.case, r.seed, r.best_itae, r.wall_time_s);
    })?;
    for f in &outcome.failures {
        eprintln!("failed: {} case-{} seed {}: {}", f.algorithm, f.case, f.seed, f.error);
    }
    println!(
        "cells: {} total, {} already present, {} completed, {} failed",
        outcome.cells_total,
        outcome.skipped,
        outcome.completed,
        outcome.failures.len()
    );
    let attempted = outcome.completed + outcome.failures.len();
    if attempted > 0 && outcome.completed == 0 {
        return Err(Failure { code: 3, message: "every cell failed".into() });
    }
    Ok(())
}

fn stats(out_dir: &Path, a: StatsArgs) -> CliResult {
    let runs = a.runs.unwrap_or_else(|| out_dir.join(harness::RUNS_FILE));
    require(&runs)?;
    let records = harness::read_runs_csv(&runs)?;
    let report = stats_report::analyze(&records)?;
    let dir = out_dir.join("stats");
    stats_report::write_reports(&report, &dir)?;

    println!("blocks used: {} (dropped {} incomplete)", report.blocks_used, report.blocks_dropped);
    for l in &report.levene {
        match &l.result {
            Outcome::Ok(r) => println!("Levene ({}): F({}, {}) = {:.4}, p = {:.4}", l.center, r.df1, r.df2, r.statistic, r.p_value),
            Outcome::Failed { error } => println!("Levene ({}): {error}", l.center),
        }
    }
    match &report.friedman {
        Outcome::Ok(f) => {
            println!("Friedman: chi2({}) = {:.4}, p = {:.4e}, Kendall's W = {:.4}", f.df, f.chi_square, f.p_value, f.kendalls_w);
            for (label, r) in f.labels.iter().zip(&f.mean_ranks) {
                println!("  {label:<5} mean rank {r:.4}");
            }
        }
        Outcome::Failed { error } => println!("Friedman: {error}"),
    }
    if let Some(p) = &report.pairwise {
        println!("post-hoc SE = {:.4} over {} comparisons", p.std_error, p.family_size);
    }
    for w in &report.wilcoxon {
        match &w.result {
            Outcome::Ok(r) => println!("Wilcoxon {} - {}: z = {:.4}, p = {:.4}", w.sample1, w.sample2, r.z, r.p_two_tailed),
            Outcome::Failed { error } => println!("Wilcoxon {} - {}: {error}", w.sample1, w.sample2),
        }
    }
    println!("reports written to {}", dir.display());
    Ok(())
}

fn report(cfg: &Config, out_dir: &Path, a: ReportArgs) -> CliResult {
    let input = a.input.unwrap_or_else(|| out_dir.to_path_buf());
    let store = ResultStore::new(&input);
    require(&store.path(harness::RUNS_FILE))?;
    require(&store.path(harness::CONVERGENCE_FILE))?;
    let records = store.load_runs()?;
    let curves = store.load_convergence()?;
    if records.is_empty() {
        return Err(usage(format!("{} has no runs", store.path(harness::RUNS_FILE).display())));
    }
    let case = match &a.case {
        Some(s) => LoadCase::parse(s)?.id,
        None => records.iter().map(|r| r.case).min().expect("non-empty"),
    };
    let first_k = a.first_k.unwrap_or(cfg.plan.first_k);

    let dir = out_dir.join("report");
    fs::create_dir_all(&dir)?;
    let summary = harness::summarize(&records);
    harness::write_summary_csv(&summary, File::create(dir.join("summary.csv"))?)?;
    let after_k = harness::convergence_report(&records, &curves, case, first_k)?;
    harness::write_convergence_summary_csv(&after_k, File::create(dir.join("after_k.csv"))?)?;
    let points: Vec<_> = harness::aggregate_curves(&curves).into_iter().filter(|p| p.case == case).collect();
    harness::write_curves_csv(&points, File::create(dir.join(format!("curves-case-{case}.csv")))?)?;

    println!("{:<5} {:>4} {:>4} {:>9} {:>9} {:>9}   best gains (kp1 ki1 kd1 kp2 ki2 kd2)", "alg", "case", "runs", "best", "worst", "mean");
    for s in &summary {
        let g = s.best_gains.to_array().map(|v| format!("{v:.4}")).join(" ");
        println!("{:<5} {:>4} {:>4} {:>9.4} {:>9.4} {:>9.4}   {g}", s.algorithm, s.case, s.runs, s.best, s.worst, s.mean);
    }
    println!();
    println!("case-{case}, fitness after {first_k} iterations (best run per algorithm)");
    for r in &after_k {
        let flag = if r.truncated { format!("  (only {} iterations recorded)", r.iterations) } else { String::new() };
        println!(
            "{:<5} after-k {:>9.4}  final {:>9.4}  time-to-k {:>8.2} s{flag}",
            r.algorithm, r.fitness_at_k, r.final_fitness, r.time_to_k_s
        );
    }
    println!("report written to {}", dir.display());
    Ok(())
}
