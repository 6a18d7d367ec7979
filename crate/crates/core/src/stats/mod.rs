//! Non-parametric comparison of optimizers: descriptive tables, Levene,
//! Friedman with Kendall's W and Bonferroni post-hoc, and Wilcoxon
//! signed-rank tests.

use serde::Serialize;

use crate::error::{Error, Result};

mod friedman;
mod levene;
pub mod report;
pub mod special;
mod wilcoxon;

pub use friedman::{
    friedman, friedman_posthoc, kendalls_w, untied_chi_square, FriedmanReport, PairwiseComparison, PairwiseReport,
};
pub use levene::{levene, LeveneCenter, LeveneReport};
pub use wilcoxon::{wilcoxon_signed_rank, wilcoxon_z, WilcoxonReport};

/// Significance level used in every report.
pub const ALPHA: f64 = 0.05;

/// Blocks (rows) by treatments (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct ResultMatrix {
    labels: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl ResultMatrix {
    /// Needs at least two blocks and two treatments, a rectangular shape and
    /// finite values.
    pub fn new(labels: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let k = labels.len();
        if k < 2 {
            return Err(Error::DegenerateInput(format!("need at least 2 treatments, got {k}")));
        }
        if rows.len() < 2 {
            return Err(Error::DegenerateInput(format!("need at least 2 blocks, got {}", rows.len())));
        }
        for (b, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::DegenerateInput(format!("block {b} has {} values, expected {k}", row.len())));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::DegenerateInput(format!("block {b} contains a non-finite value")));
            }
        }
        Ok(Self { labels, rows })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn blocks(&self) -> usize {
        self.rows.len()
    }

    pub fn treatments(&self) -> usize {
        self.labels.len()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }
}

/// 1-based ranks with ties sharing their mean rank.
pub fn mid_ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|a, b| values[*a].total_cmp(&values[*b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && values[idx[end]] == values[idx[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &idx[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

/// Sizes of the tie groups in `values` (groups of one included).
pub(crate) fn tie_groups(values: &[f64]) -> Vec<usize> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut out = Vec::new();
    let mut run = 1;
    for w in sorted.windows(2) {
        if w[1] == w[0] {
            run += 1;
        } else {
            out.push(run);
            run = 1;
        }
    }
    if !sorted.is_empty() {
        out.push(run);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Descriptive {
    pub n: usize,
    pub best: f64,
    pub worst: f64,
    pub mean: f64,
}

/// Best (minimum), worst (maximum) and mean of a sample.
pub fn descriptive(samples: &[f64]) -> Result<Descriptive> {
    if samples.is_empty() {
        return Err(Error::EmptyInput("samples"));
    }
    let best = samples.iter().copied().fold(f64::INFINITY, f64::min);
    let worst = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    Ok(Descriptive { n: samples.len(), best, worst, mean })
}

/// Median of a non-empty sample.
pub fn median(samples: &[f64]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptyInput("samples"));
    }
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    Ok(if n % 2 == 1 { s[n / 2] } else { 0.5 * (s[n / 2 - 1] + s[n / 2]) })
}
