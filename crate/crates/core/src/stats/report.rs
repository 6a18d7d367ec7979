//! Statistical analysis of a finished experiment.
//!
//! Blocks are (case, seed) pairs and treatments are algorithms. Only blocks in
//! which every algorithm has a result enter the rank-based tests; descriptive
//! statistics and Levene use every recorded run. A test whose input is
//! degenerate is reported as failed without stopping the others.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::path::Path;

use serde::Serialize;

use super::{
    descriptive, friedman, friedman_posthoc, levene, wilcoxon_signed_rank, FriedmanReport, LeveneCenter, LeveneReport,
    PairwiseReport, ResultMatrix, WilcoxonReport,
};
use crate::error::{Error, Result};
use crate::harness::RunRecord;
use crate::optimizers::Algorithm;

/// Result of one test, or the reason it could not be computed.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome<T> {
    Ok(T),
    Failed { error: String },
}

impl<T> Outcome<T> {
    fn from_result(r: Result<T>) -> Self {
        match r {
            Ok(v) => Outcome::Ok(v),
            Err(e) => Outcome::Failed { error: e.to_string() },
        }
    }

    pub fn ok(&self) -> Option<&T> {
        match self {
            Outcome::Ok(v) => Some(v),
            Outcome::Failed { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DescriptiveRow {
    pub algorithm: Algorithm,
    pub case: u8,
    pub runs: usize,
    pub best: f64,
    pub worst: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeveneRow {
    pub center: LeveneCenter,
    pub result: Outcome<LeveneReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WilcoxonRow {
    pub sample1: Algorithm,
    pub sample2: Algorithm,
    pub result: Outcome<WilcoxonReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsReport {
    pub algorithms: Vec<Algorithm>,
    pub blocks_used: usize,
    pub blocks_dropped: usize,
    pub descriptive: Vec<DescriptiveRow>,
    pub levene: Vec<LeveneRow>,
    pub friedman: Outcome<FriedmanReport>,
    pub pairwise: Option<PairwiseReport>,
    pub wilcoxon: Vec<WilcoxonRow>,
}

pub const DESCRIPTIVE_HEADER: [&str; 6] = ["algorithm", "case", "runs", "best", "worst", "mean"];
pub const LEVENE_HEADER: [&str; 6] = ["center", "statistic", "df1", "df2", "p_value", "error"];
pub const FRIEDMAN_RANKS_HEADER: [&str; 2] = ["algorithm", "mean_rank"];
pub const FRIEDMAN_HEADER: [&str; 8] =
    ["blocks", "treatments", "chi_square", "df", "p_value", "kendalls_w", "alpha", "error"];
pub const PAIRWISE_HEADER: [&str; 7] =
    ["sample1", "sample2", "statistic", "std_error", "std_statistic", "p_value", "p_adjusted"];
pub const WILCOXON_HEADER: [&str; 12] = [
    "sample1",
    "sample2",
    "n_negative",
    "n_positive",
    "n_ties",
    "mean_rank_negative",
    "mean_rank_positive",
    "sum_negative",
    "sum_positive",
    "z",
    "p_value",
    "error",
];

/// Runs every test over the harness records.
pub fn analyze(records: &[RunRecord]) -> Result<StatsReport> {
    if records.is_empty() {
        return Err(Error::EmptyInput("no run records"));
    }
    let algorithms: Vec<Algorithm> = records.iter().map(|r| r.algorithm).collect::<BTreeSet<_>>().into_iter().collect();

    let mut cells: BTreeMap<(u8, Algorithm), Vec<f64>> = BTreeMap::new();
    let mut per_alg: BTreeMap<Algorithm, Vec<f64>> = BTreeMap::new();
    let mut blocks: BTreeMap<(u8, u64), BTreeMap<Algorithm, f64>> = BTreeMap::new();
    for r in records {
        cells.entry((r.case, r.algorithm)).or_default().push(r.best_itae);
        per_alg.entry(r.algorithm).or_default().push(r.best_itae);
        blocks.entry((r.case, r.seed)).or_default().insert(r.algorithm, r.best_itae);
    }

    let descriptive = cells
        .iter()
        .map(|(&(case, algorithm), v)| {
            let d = descriptive(v).expect("non-empty");
            DescriptiveRow { algorithm, case, runs: d.n, best: d.best, worst: d.worst, mean: d.mean }
        })
        .collect();

    let groups: Vec<Vec<f64>> = per_alg.into_values().collect();
    let levene = LeveneCenter::ALL
        .iter()
        .map(|&center| LeveneRow { center, result: Outcome::from_result(levene(&groups, center)) })
        .collect();

    let complete: Vec<Vec<f64>> = blocks
        .values()
        .filter(|b| b.len() == algorithms.len())
        .map(|b| algorithms.iter().map(|a| b[a]).collect())
        .collect();
    let blocks_used = complete.len();
    let blocks_dropped = blocks.len() - blocks_used;

    let labels: Vec<String> = algorithms.iter().map(|a| a.label().to_string()).collect();
    let friedman = Outcome::from_result(ResultMatrix::new(labels, complete.clone()).and_then(|m| friedman(&m)));
    let pairwise = friedman.ok().map(friedman_posthoc);

    let column = |j: usize| complete.iter().map(|row| row[j]).collect::<Vec<f64>>();
    let mut wilcoxon = Vec::new();
    for i in 0..algorithms.len() {
        for j in i + 1..algorithms.len() {
            wilcoxon.push(WilcoxonRow {
                sample1: algorithms[i],
                sample2: algorithms[j],
                result: Outcome::from_result(wilcoxon_signed_rank(&column(i), &column(j))),
            });
        }
    }

    Ok(StatsReport { algorithms, blocks_used, blocks_dropped, descriptive, levene, friedman, pairwise, wilcoxon })
}

fn num(v: f64) -> String {
    v.to_string()
}

/// Writes the CSV tables plus `stats.json` into `dir`.
pub fn write_reports(report: &StatsReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;

    let mut w = csv::Writer::from_path(dir.join("descriptive.csv"))?;
    w.write_record(DESCRIPTIVE_HEADER)?;
    for d in &report.descriptive {
        w.write_record([d.algorithm.label().into(), d.case.to_string(), d.runs.to_string(), num(d.best), num(d.worst), num(d.mean)])?;
    }
    w.flush()?;

    let mut w = csv::Writer::from_path(dir.join("levene.csv"))?;
    w.write_record(LEVENE_HEADER)?;
    for l in &report.levene {
        let row = match &l.result {
            Outcome::Ok(r) => [l.center.label().into(), num(r.statistic), r.df1.to_string(), r.df2.to_string(), num(r.p_value), String::new()],
            Outcome::Failed { error } => [l.center.label().into(), String::new(), String::new(), String::new(), String::new(), error.clone()],
        };
        w.write_record(row)?;
    }
    w.flush()?;

    let mut ranks = csv::Writer::from_path(dir.join("friedman_ranks.csv"))?;
    ranks.write_record(FRIEDMAN_RANKS_HEADER)?;
    let mut w = csv::Writer::from_path(dir.join("friedman.csv"))?;
    w.write_record(FRIEDMAN_HEADER)?;
    match &report.friedman {
        Outcome::Ok(f) => {
            for (label, r) in f.labels.iter().zip(&f.mean_ranks) {
                ranks.write_record([label.clone(), num(*r)])?;
            }
            w.write_record([
                f.blocks.to_string(),
                f.labels.len().to_string(),
                num(f.chi_square),
                f.df.to_string(),
                num(f.p_value),
                num(f.kendalls_w),
                num(f.alpha),
                String::new(),
            ])?;
        }
        Outcome::Failed { error } => {
            w.write_record([
                report.blocks_used.to_string(),
                report.algorithms.len().to_string(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                error.clone(),
            ])?;
        }
    }
    ranks.flush()?;
    w.flush()?;

    let mut w = csv::Writer::from_path(dir.join("pairwise.csv"))?;
    w.write_record(PAIRWISE_HEADER)?;
    for c in report.pairwise.iter().flat_map(|p| &p.comparisons) {
        w.write_record([
            c.sample1.clone(),
            c.sample2.clone(),
            num(c.statistic),
            num(c.std_error),
            num(c.std_statistic),
            num(c.p_value),
            num(c.p_adjusted),
        ])?;
    }
    w.flush()?;

    let mut w = csv::Writer::from_path(dir.join("wilcoxon.csv"))?;
    w.write_record(WILCOXON_HEADER)?;
    for row in &report.wilcoxon {
        let (a, b) = (row.sample1.label().to_string(), row.sample2.label().to_string());
        let rec = match &row.result {
            Outcome::Ok(r) => vec![
                a,
                b,
                r.n_negative.to_string(),
                r.n_positive.to_string(),
                r.n_ties.to_string(),
                num(r.mean_rank_negative),
                num(r.mean_rank_positive),
                num(r.sum_negative),
                num(r.sum_positive),
                num(r.z),
                num(r.p_two_tailed),
                String::new(),
            ],
            Outcome::Failed { error } => {
                let mut v = vec![a, b];
                v.extend(std::iter::repeat_n(String::new(), 9));
                v.push(error.clone());
                v
            }
        };
        w.write_record(rec)?;
    }
    w.flush()?;

    serde_json::to_writer_pretty(File::create(dir.join("stats.json"))?, report)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(algorithm: Algorithm, case: u8, seed: u64, best_itae: f64) -> RunRecord {
        RunRecord {
            algorithm,
            case,
            seed,
            best_itae,
            wall_time_s: 1.0,
            evaluations: 1,
            kp1: 0.0,
            ki1: 0.0,
            kd1: 0.0,
            kp2: 0.0,
            ki2: 0.0,
            kd2: 0.0,
        }
    }

    fn grid() -> Vec<RunRecord> {
        let mut v = Vec::new();
        for case in 1..=2u8 {
            for seed in 0..6u64 {
                let base = case as f64 + 0.01 * seed as f64;
                v.push(rec(Algorithm::Egbo, case, seed, base));
                v.push(rec(Algorithm::Pso, case, seed, base + 0.1 + 0.001 * (seed % 3) as f64));
                v.push(rec(Algorithm::Sca, case, seed, base + 0.3 * (1.0 + seed as f64)));
            }
        }
        v
    }

    #[test]
    fn analysis_over_complete_blocks() {
        let mut records = grid();
        // An incomplete block is dropped from the rank tests.
        records.push(rec(Algorithm::Egbo, 3, 0, 9.0));
        let r = analyze(&records).unwrap();
        assert_eq!(r.algorithms, vec![Algorithm::Egbo, Algorithm::Pso, Algorithm::Sca]);
        assert_eq!((r.blocks_used, r.blocks_dropped), (12, 1));
        assert_eq!(r.descriptive.len(), 7);
        let f = r.friedman.ok().unwrap();
        assert_eq!(f.mean_ranks, vec![1.0, 2.0, 3.0]);
        assert!((f.kendalls_w - 1.0).abs() < 1e-12);
        assert_eq!(r.pairwise.as_ref().unwrap().comparisons.len(), 6);
        assert_eq!(r.wilcoxon.len(), 3);
        let w = r.wilcoxon[0].result.ok().unwrap();
        assert_eq!((w.n_negative, w.n_positive), (12, 0));
        assert_eq!(r.levene.len(), 3);
    }

    #[test]
    fn degenerate_tests_fail_individually() {
        // Identical results everywhere: every rank test is degenerate.
        let records: Vec<RunRecord> = (0..6)
            .flat_map(|s| [rec(Algorithm::Egbo, 1, s, 0.5), rec(Algorithm::Gbo, 1, s, 0.5)])
            .collect();
        let r = analyze(&records).unwrap();
        assert!(matches!(r.friedman, Outcome::Failed { .. }));
        assert!(r.pairwise.is_none());
        assert!(matches!(r.wilcoxon[0].result, Outcome::Failed { .. }));
        assert!(r.levene.iter().all(|l| matches!(l.result, Outcome::Failed { .. })));

        let dir = tempfile::tempdir().unwrap();
        write_reports(&r, dir.path()).unwrap();
        let f = std::fs::read_to_string(dir.path().join("friedman.csv")).unwrap();
        assert!(f.lines().nth(1).unwrap().contains("degenerate"));
    }

    #[test]
    fn writes_every_table() {
        let r = analyze(&grid()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        write_reports(&r, dir.path()).unwrap();
        let read = |f: &str| std::fs::read_to_string(dir.path().join(f)).unwrap();
        assert_eq!(read("descriptive.csv").lines().next().unwrap(), DESCRIPTIVE_HEADER.join(","));
        assert_eq!(read("levene.csv").lines().count(), 4);
        assert_eq!(read("friedman_ranks.csv").lines().count(), 4);
        assert_eq!(read("friedman.csv").lines().count(), 2);
        assert_eq!(read("pairwise.csv").lines().count(), 7);
        assert_eq!(read("wilcoxon.csv").lines().count(), 4);
        let json: serde_json::Value = serde_json::from_str(&read("stats.json")).unwrap();
        assert_eq!(json["friedman"]["status"], "ok");
        assert_eq!(json["blocks_used"], 12);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(analyze(&[]), Err(Error::EmptyInput(_))));
    }
}
