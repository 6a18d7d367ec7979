use serde::Serialize;

use super::special::{chi_square_sf, normal_two_sided_p};
use super::{mid_ranks, tie_groups, ResultMatrix, ALPHA};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FriedmanReport {
    pub labels: Vec<String>,
    pub mean_ranks: Vec<f64>,
    pub blocks: usize,
    pub chi_square: f64,
    pub df: usize,
    pub p_value: f64,
    pub kendalls_w: f64,
    /// Divisor applied to the untied statistic (1 when there are no ties).
    pub tie_correction: f64,
    pub alpha: f64,
}

/// Friedman rank test over the blocks of `m`, ranking within each block.
pub fn friedman(m: &ResultMatrix) -> Result<FriedmanReport> {
    let n = m.blocks();
    let k = m.treatments();
    let mut rank_sums = vec![0.0; k];
    let mut tie_sum = 0.0;
    for row in m.rows() {
        for (s, r) in rank_sums.iter_mut().zip(mid_ranks(row)) {
            *s += r;
        }
        tie_sum += tie_groups(row).iter().map(|&t| (t * t * t - t) as f64).sum::<f64>();
    }
    let (nf, kf) = (n as f64, k as f64);
    let correction = 1.0 - tie_sum / (nf * (kf * kf * kf - kf));
    if correction <= 0.0 {
        return Err(Error::DegenerateInput("every block is constant".into()));
    }
    let mean_ranks: Vec<f64> = rank_sums.iter().map(|s| s / nf).collect();
    let chi_square = untied_chi_square(&mean_ranks, n) / correction;
    let df = k - 1;
    Ok(FriedmanReport {
        labels: m.labels().to_vec(),
        p_value: chi_square_sf(chi_square, df as f64),
        kendalls_w: kendalls_w(chi_square, n, k),
        mean_ranks,
        blocks: n,
        chi_square,
        df,
        tie_correction: correction,
        alpha: ALPHA,
    })
}

/// `12N / (k(k+1)) * sum(R_j^2) - 3N(k+1)` from mean ranks, without tie correction.
pub fn untied_chi_square(mean_ranks: &[f64], blocks: usize) -> f64 {
    let n = blocks as f64;
    let k = mean_ranks.len() as f64;
    12.0 * n / (k * (k + 1.0)) * mean_ranks.iter().map(|r| r * r).sum::<f64>() - 3.0 * n * (k + 1.0)
}

/// Kendall's coefficient of concordance, `chi2 / (N (k - 1))`.
pub fn kendalls_w(chi_square: f64, blocks: usize, treatments: usize) -> f64 {
    chi_square / (blocks as f64 * (treatments as f64 - 1.0))
}

/// One ordered pair of treatments. `statistic` is `mean_rank(sample1) - mean_rank(sample2)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseComparison {
    pub sample1: String,
    pub sample2: String,
    pub statistic: f64,
    pub std_error: f64,
    pub std_statistic: f64,
    pub p_value: f64,
    pub p_adjusted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseReport {
    pub std_error: f64,
    /// Bonferroni family size, `k (k - 1) / 2`.
    pub family_size: usize,
    /// Every ordered pair, so both sign conventions are available.
    pub comparisons: Vec<PairwiseComparison>,
}

impl PairwiseReport {
    pub fn get(&self, sample1: &str, sample2: &str) -> Option<&PairwiseComparison> {
        self.comparisons.iter().find(|c| c.sample1 == sample1 && c.sample2 == sample2)
    }
}

/// Post-hoc comparison of mean ranks with standard error `sqrt(k(k+1)/(6N))`
/// and Bonferroni adjustment over all unordered pairs.
pub fn friedman_posthoc(report: &FriedmanReport) -> PairwiseReport {
    let k = report.mean_ranks.len();
    let kf = k as f64;
    let se = (kf * (kf + 1.0) / (6.0 * report.blocks as f64)).sqrt();
    let family = k * (k - 1) / 2;
    let mut comparisons = Vec::with_capacity(k * (k - 1));
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            let statistic = report.mean_ranks[a] - report.mean_ranks[b];
            let z = statistic / se;
            let p = normal_two_sided_p(z);
            comparisons.push(PairwiseComparison {
                sample1: report.labels[a].clone(),
                sample2: report.labels[b].clone(),
                statistic,
                std_error: se,
                std_statistic: z,
                p_value: p,
                p_adjusted: (p * family as f64).min(1.0),
            });
        }
    }
    PairwiseReport { std_error: se, family_size: family, comparisons }
}
