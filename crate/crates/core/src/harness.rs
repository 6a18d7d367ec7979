//! Benchmark harness: runs the algorithm x case x seed grid, persists results
//! and builds the summary tables.
//!
//! Every finished cell is appended to `runs.csv` and `convergence.csv` and
//! flushed immediately, so an interrupted experiment resumes where it stopped.
//! Convergence rows are written before the run row; a crash between the two
//! leaves orphan convergence rows that get rewritten (and deduplicated on load)
//! when the cell is re-run.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::optimizers::{self, Algorithm, RunTrace};
use crate::plant::PidGains;
use crate::simulator::LfcObjective;
use crate::stats;

pub const RUNS_FILE: &str = "runs.csv";
pub const CONVERGENCE_FILE: &str = "convergence.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

pub const RUNS_HEADER: [&str; 12] = [
    "algorithm", "case", "seed", "best_itae", "wall_time_s", "evaluations", "kp1", "ki1", "kd1", "kp2", "ki2", "kd2",
];
pub const CONVERGENCE_HEADER: [&str; 5] = ["algorithm", "case", "seed", "iteration", "best_fitness"];

/// One (algorithm, case, seed) cell of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellKey {
    pub algorithm: Algorithm,
    pub case: u8,
    pub seed: u64,
}

/// One row of `runs.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: Algorithm,
    pub case: u8,
    pub seed: u64,
    pub best_itae: f64,
    pub wall_time_s: f64,
    pub evaluations: u64,
    pub kp1: f64,
    pub ki1: f64,
    pub kd1: f64,
    pub kp2: f64,
    pub ki2: f64,
    pub kd2: f64,
}

impl RunRecord {
    pub fn from_trace(case: u8, trace: &RunTrace) -> Self {
        let g = &trace.final_gains;
        Self {
            algorithm: trace.algorithm,
            case,
            seed: trace.seed,
            best_itae: trace.final_fitness,
            wall_time_s: trace.wall_time,
            evaluations: trace.evaluations,
            kp1: g[0],
            ki1: g[1],
            kd1: g[2],
            kp2: g[3],
            ki2: g[4],
            kd2: g[5],
        }
    }

    pub fn key(&self) -> CellKey {
        CellKey { algorithm: self.algorithm, case: self.case, seed: self.seed }
    }

    pub fn gains(&self) -> PidGains {
        PidGains::new(self.kp1, self.ki1, self.kd1, self.kp2, self.ki2, self.kd2)
    }
}

/// One row of `convergence.csv`; `iteration` is 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub algorithm: Algorithm,
    pub case: u8,
    pub seed: u64,
    pub iteration: usize,
    pub best_fitness: f64,
}

impl ConvergenceRow {
    pub fn key(&self) -> CellKey {
        CellKey { algorithm: self.algorithm, case: self.case, seed: self.seed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellFailure {
    pub algorithm: Algorithm,
    pub case: u8,
    pub seed: u64,
    pub error: String,
}

/// Written next to the CSVs; the only output that carries timestamps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool_version: String,
    pub created_unix: u64,
    pub updated_unix: u64,
    pub config: Config,
    pub cells_total: usize,
    pub cells_completed: usize,
    pub failures: Vec<CellFailure>,
}

/// The full grid in execution order: case, then algorithm, then run index.
pub fn plan_cells(cfg: &Config) -> Vec<CellKey> {
    let mut cells = Vec::new();
    for &case in &cfg.plan.cases {
        for &algorithm in &cfg.plan.algorithms {
            for r in 0..cfg.plan.runs_per_cell {
                cells.push(CellKey { algorithm, case, seed: cfg.plan.base_seed + r as u64 });
            }
        }
    }
    cells
}

/// Runs a single cell without touching the disk.
pub fn run_cell(cfg: &Config, cell: CellKey) -> Result<RunTrace> {
    let case = cfg.case(cell.case)?;
    let objective = LfcObjective::new(cfg.plant, case, cfg.sim, cfg.search_space.clone())?;
    optimizers::run(cell.algorithm, &objective, &cfg.optimizers.clone().with_seed(cell.seed))
}

/// Reads and appends the result files of one output directory.
#[derive(Debug, Clone)]
pub struct ResultStore {
    dir: PathBuf,
}

impl ResultStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, file: &str) -> PathBuf {
        self.dir.join(file)
    }

    /// Completed runs, one per cell (a later duplicate wins).
    pub fn load_runs(&self) -> Result<Vec<RunRecord>> {
        read_runs_csv(&self.path(RUNS_FILE))
    }

    /// Convergence rows sorted by cell then iteration, deduplicated.
    pub fn load_convergence(&self) -> Result<Vec<ConvergenceRow>> {
        let rows: Vec<ConvergenceRow> = read_rows(&self.path(CONVERGENCE_FILE), &CONVERGENCE_HEADER)?;
        let mut by_key = BTreeMap::new();
        for r in rows {
            by_key.insert((r.key(), r.iteration), r);
        }
        Ok(by_key.into_values().collect())
    }

    pub fn load_manifest(&self) -> Result<Option<Manifest>> {
        let path = self.path(MANIFEST_FILE);
        if !path.exists() {
            return Ok(None);
        }
        Ok(Some(serde_json::from_reader(File::open(path)?)?))
    }

    fn write_manifest(&self, manifest: &Manifest) -> Result<()> {
        let tmp = self.path("manifest.json.tmp");
        serde_json::to_writer_pretty(File::create(&tmp)?, manifest)?;
        fs::rename(tmp, self.path(MANIFEST_FILE))?;
        Ok(())
    }
}

/// Reads a `runs.csv` from any path; a missing or empty file yields no rows.
pub fn read_runs_csv(path: &Path) -> Result<Vec<RunRecord>> {
    let rows: Vec<RunRecord> = read_rows(path, &RUNS_HEADER)?;
    let mut by_key = BTreeMap::new();
    for r in rows {
        by_key.insert(r.key(), r);
    }
    Ok(by_key.into_values().collect())
}

fn read_rows<T: for<'de> Deserialize<'de>>(path: &Path, header: &[&str]) -> Result<Vec<T>> {
    if !path.exists() || fs::metadata(path)?.len() == 0 {
        return Ok(Vec::new());
    }
    let mut rdr = csv::Reader::from_path(path)?;
    let found: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if found != header {
        return Err(Error::Schema(format!(
            "{} has columns [{}], expected [{}]",
            path.display(),
            found.join(","),
            header.join(",")
        )));
    }
    let mut out = Vec::new();
    for row in rdr.deserialize() {
        out.push(row.map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?);
    }
    Ok(out)
}

/// Opens `path` for appending, writing the header if the file is new or empty.
fn append_writer(path: &Path, header: &[&str]) -> Result<csv::Writer<File>> {
    let fresh = !path.exists() || fs::metadata(path)?.len() == 0;
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    if fresh {
        w.write_record(header)?;
        w.flush()?;
    }
    Ok(w)
}

fn now_unix() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Everything except the plan and the per-run seed must match to resume.
fn same_problem(a: &Config, b: &Config) -> bool {
    let strip = |c: &Config| {
        let mut c = c.clone();
        c.plan = Default::default();
        c.optimizers.seed = 0;
        c
    };
    strip(a) == strip(b)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentOutcome {
    pub cells_total: usize,
    /// Cells already present in `runs.csv` before this call.
    pub skipped: usize,
    pub completed: usize,
    pub failures: Vec<CellFailure>,
}

/// Runs every planned cell not yet in `dir`, in parallel, calling `on_done`
/// after each cell is persisted.
pub fn run_experiment<F>(cfg: &Config, dir: &Path, on_done: F) -> Result<ExperimentOutcome>
where
    F: Fn(&RunRecord) + Sync,
{
    cfg.validate()?;
    fs::create_dir_all(dir)?;
    let store = ResultStore::new(dir);
    let previous = store.load_manifest()?;
    if let Some(m) = &previous {
        if !same_problem(&m.config, cfg) {
            return Err(Error::Config(format!(
                "{} holds results for a different configuration; use a fresh output directory",
                dir.display()
            )));
        }
    }

    let cells = plan_cells(cfg);
    let done: BTreeSet<CellKey> = store.load_runs()?.iter().map(RunRecord::key).collect();
    let pending: Vec<CellKey> = cells.iter().copied().filter(|c| !done.contains(c)).collect();
    let created = previous.as_ref().map_or_else(now_unix, |m| m.created_unix);

    let mut manifest = Manifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        created_unix: created,
        updated_unix: now_unix(),
        config: cfg.clone(),
        cells_total: cells.len(),
        cells_completed: cells.len() - pending.len(),
        failures: Vec::new(),
    };
    store.write_manifest(&manifest)?;

    let writers = Mutex::new((
        append_writer(&store.path(CONVERGENCE_FILE), &CONVERGENCE_HEADER)?,
        append_writer(&store.path(RUNS_FILE), &RUNS_HEADER)?,
    ));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.plan.threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;

    let results: Vec<Result<(), CellFailure>> = pool.install(|| {
        pending
            .par_iter()
            .map(|&cell| {
                let fail = |e: Error| CellFailure {
                    algorithm: cell.algorithm,
                    case: cell.case,
                    seed: cell.seed,
                    error: e.to_string(),
                };
                let trace = run_cell(cfg, cell).map_err(fail)?;
                let record = RunRecord::from_trace(cell.case, &trace);
                persist(&writers, &record, &trace.curve).map_err(fail)?;
                on_done(&record);
                Ok(())
            })
            .collect()
    });

    let failures: Vec<CellFailure> = results.into_iter().filter_map(|r| r.err()).collect();
    let completed = pending.len() - failures.len();
    manifest.cells_completed += completed;
    manifest.failures = failures.clone();
    manifest.updated_unix = now_unix();
    store.write_manifest(&manifest)?;

    Ok(ExperimentOutcome { cells_total: cells.len(), skipped: cells.len() - pending.len(), completed, failures })
}

type Writers = (csv::Writer<File>, csv::Writer<File>);

fn persist(writers: &Mutex<Writers>, record: &RunRecord, curve: &[f64]) -> Result<()> {
    // A poisoned lock only means another worker panicked mid-write; the
    // files are append-only so carrying on is safe.
    let mut guard = writers.lock().unwrap_or_else(|p| p.into_inner());
    let (conv, runs) = &mut *guard;
    for (i, &best_fitness) in curve.iter().enumerate() {
        conv.serialize(ConvergenceRow {
            algorithm: record.algorithm,
            case: record.case,
            seed: record.seed,
            iteration: i + 1,
            best_fitness,
        })?;
    }
    conv.flush()?;
    runs.serialize(record)?;
    runs.flush()?;
    Ok(())
}

/// Writes one run's best-so-far curve in the `convergence.csv` layout.
pub fn write_trace_curve<W: Write>(trace: &RunTrace, case: u8, w: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    for (i, &best_fitness) in trace.curve.iter().enumerate() {
        w.serialize(ConvergenceRow { algorithm: trace.algorithm, case, seed: trace.seed, iteration: i + 1, best_fitness })?;
    }
    w.flush()?;
    Ok(())
}

/// Best / worst / mean ITAE of one (algorithm, case) cell, with the gains of
/// its best run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub algorithm: Algorithm,
    pub case: u8,
    pub runs: usize,
    pub best: f64,
    pub worst: f64,
    pub mean: f64,
    pub best_seed: u64,
    pub best_gains: PidGains,
}

pub const SUMMARY_HEADER: [&str; 13] = [
    "algorithm", "case", "runs", "best", "worst", "mean", "best_seed", "kp1", "ki1", "kd1", "kp2", "ki2", "kd2",
];

/// Groups records by case, then by algorithm in canonical order.
pub fn summarize(records: &[RunRecord]) -> Vec<CellSummary> {
    let mut groups: BTreeMap<(u8, Algorithm), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.case, r.algorithm)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((case, algorithm), rs)| {
            let values: Vec<f64> = rs.iter().map(|r| r.best_itae).collect();
            let d = stats::descriptive(&values).expect("groups are non-empty");
            let best = best_run(&rs);
            CellSummary {
                algorithm,
                case,
                runs: d.n,
                best: d.best,
                worst: d.worst,
                mean: d.mean,
                best_seed: best.seed,
                best_gains: best.gains(),
            }
        })
        .collect()
}

/// Lowest ITAE; ties go to the lowest seed.
fn best_run<'a>(rs: &[&'a RunRecord]) -> &'a RunRecord {
    rs.iter()
        .copied()
        .min_by(|a, b| a.best_itae.total_cmp(&b.best_itae).then(a.seed.cmp(&b.seed)))
        .expect("non-empty")
}

pub fn write_summary_csv<W: Write>(rows: &[CellSummary], w: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    w.write_record(SUMMARY_HEADER)?;
    for s in rows {
        let mut rec = vec![
            s.algorithm.label().to_string(),
            s.case.to_string(),
            s.runs.to_string(),
            s.best.to_string(),
            s.worst.to_string(),
            s.mean.to_string(),
            s.best_seed.to_string(),
        ];
        rec.extend(s.best_gains.to_array().iter().map(f64::to_string));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Fitness after `first_k` iterations of each algorithm's best run on one case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceSummary {
    pub algorithm: Algorithm,
    pub case: u8,
    pub seed: u64,
    pub first_k: usize,
    /// Iterations actually recorded; smaller than `first_k` when truncated.
    pub iterations: usize,
    pub fitness_at_k: f64,
    pub final_fitness: f64,
    /// Wall time scaled by the fraction of iterations, `wall * k / iterations`.
    pub time_to_k_s: f64,
    pub wall_time_s: f64,
    pub truncated: bool,
}

pub const CONVERGENCE_SUMMARY_HEADER: [&str; 10] = [
    "algorithm",
    "case",
    "seed",
    "first_k",
    "iterations",
    "fitness_at_k",
    "final_fitness",
    "time_to_k_s",
    "wall_time_s",
    "truncated",
];

pub fn convergence_report(
    records: &[RunRecord],
    curves: &[ConvergenceRow],
    case: u8,
    first_k: usize,
) -> Result<Vec<ConvergenceSummary>> {
    if first_k == 0 {
        return Err(crate::error::invalid("first_k", "must be >= 1"));
    }
    let mut by_alg: BTreeMap<Algorithm, Vec<&RunRecord>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.case == case) {
        by_alg.entry(r.algorithm).or_default().push(r);
    }
    if by_alg.is_empty() {
        return Err(Error::EmptyInput("no runs recorded for the requested case"));
    }
    let mut out = Vec::new();
    for (algorithm, rs) in by_alg {
        let best = best_run(&rs);
        let mut curve: Vec<&ConvergenceRow> = curves.iter().filter(|c| c.key() == best.key()).collect();
        curve.sort_by_key(|c| c.iteration);
        let Some(last) = curve.last() else {
            return Err(Error::Schema(format!(
                "no convergence rows for {} case {} seed {}",
                algorithm, case, best.seed
            )));
        };
        let n = curve.len();
        let k = first_k.min(n);
        out.push(ConvergenceSummary {
            algorithm,
            case,
            seed: best.seed,
            first_k,
            iterations: n,
            fitness_at_k: curve[k - 1].best_fitness,
            final_fitness: last.best_fitness,
            time_to_k_s: best.wall_time_s * k as f64 / n as f64,
            wall_time_s: best.wall_time_s,
            truncated: first_k > n,
        });
    }
    Ok(out)
}

pub fn write_convergence_summary_csv<W: Write>(rows: &[ConvergenceSummary], w: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    w.write_record(CONVERGENCE_SUMMARY_HEADER)?;
    for r in rows {
        w.write_record([
            r.algorithm.label().to_string(),
            r.case.to_string(),
            r.seed.to_string(),
            r.first_k.to_string(),
            r.iterations.to_string(),
            r.fitness_at_k.to_string(),
            r.final_fitness.to_string(),
            r.time_to_k_s.to_string(),
            r.wall_time_s.to_string(),
            r.truncated.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Median and best curve across runs, per algorithm, case and iteration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub algorithm: Algorithm,
    pub case: u8,
    pub iteration: usize,
    pub median_fitness: f64,
    pub best_fitness: f64,
}

pub const CURVE_HEADER: [&str; 5] = ["algorithm", "case", "iteration", "median_fitness", "best_fitness"];

pub fn aggregate_curves(curves: &[ConvergenceRow]) -> Vec<CurvePoint> {
    let mut groups: BTreeMap<(u8, Algorithm, usize), Vec<f64>> = BTreeMap::new();
    for c in curves {
        groups.entry((c.case, c.algorithm, c.iteration)).or_default().push(c.best_fitness);
    }
    groups
        .into_iter()
        .map(|((case, algorithm, iteration), v)| CurvePoint {
            algorithm,
            case,
            iteration,
            median_fitness: stats::median(&v).expect("non-empty"),
            best_fitness: v.iter().copied().fold(f64::INFINITY, f64::min),
        })
        .collect()
}

pub fn write_curves_csv<W: Write>(rows: &[CurvePoint], w: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    w.write_record(CURVE_HEADER)?;
    for p in rows {
        w.write_record([
            p.algorithm.label().to_string(),
            p.case.to_string(),
            p.iteration.to_string(),
            p.median_fitness.to_string(),
            p.best_fitness.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
