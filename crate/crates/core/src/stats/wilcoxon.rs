use serde::Serialize;

use super::special::normal_two_sided_p;
use super::{mid_ranks, ALPHA};
use crate::error::{Error, Result};

/// Minimum number of non-zero differences for the normal approximation.
pub const MIN_PAIRS: usize = 5;

/// Differences are `a - b`; "negative" means `a < b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WilcoxonReport {
    pub n_negative: usize,
    pub n_positive: usize,
    pub n_ties: usize,
    pub mean_rank_negative: f64,
    pub mean_rank_positive: f64,
    pub sum_negative: f64,
    pub sum_positive: f64,
    pub z: f64,
    pub p_two_tailed: f64,
    pub alpha: f64,
}

/// Wilcoxon signed-rank test with zero differences dropped, mid-ranks for
/// tied magnitudes and no continuity correction.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<WilcoxonReport> {
    if a.len() != b.len() {
        return Err(Error::DegenerateInput(format!("paired samples differ in length ({} vs {})", a.len(), b.len())));
    }
    if a.is_empty() {
        return Err(Error::EmptyInput("paired samples"));
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).filter(|d| *d != 0.0).collect();
    let n_ties = a.len() - diffs.len();
    if diffs.is_empty() {
        return Err(Error::AllTies);
    }
    if diffs.len() < MIN_PAIRS {
        return Err(Error::TooFewPairs { found: diffs.len(), needed: MIN_PAIRS });
    }
    let ranks = mid_ranks(&diffs.iter().map(|d| d.abs()).collect::<Vec<_>>());
    let (mut n_neg, mut n_pos, mut sum_neg, mut sum_pos) = (0usize, 0usize, 0.0, 0.0);
    for (d, r) in diffs.iter().zip(&ranks) {
        if *d < 0.0 {
            n_neg += 1;
            sum_neg += r;
        } else {
            n_pos += 1;
            sum_pos += r;
        }
    }
    let z = wilcoxon_z(sum_pos, diffs.len());
    let mean = |s: f64, c: usize| if c == 0 { 0.0 } else { s / c as f64 };
    Ok(WilcoxonReport {
        n_negative: n_neg,
        n_positive: n_pos,
        n_ties,
        mean_rank_negative: mean(sum_neg, n_neg),
        mean_rank_positive: mean(sum_pos, n_pos),
        sum_negative: sum_neg,
        sum_positive: sum_pos,
        z,
        p_two_tailed: normal_two_sided_p(z),
        alpha: ALPHA,
    })
}

/// Normal approximation `(W+ - m(m+1)/4) / sqrt(m(m+1)(2m+1)/24)` from the
/// positive rank sum over `m` non-zero differences.
pub fn wilcoxon_z(sum_positive: f64, m: usize) -> f64 {
    let m = m as f64;
    (sum_positive - m * (m + 1.0) / 4.0) / (m * (m + 1.0) * (2.0 * m + 1.0) / 24.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_computed_small_sample() {
        // Differences -1, 2, -3, 4, 5, 0: ranks 1..5, one tie dropped.
        let a = [0.0, 2.0, 0.0, 4.0, 5.0, 7.0];
        let b = [1.0, 0.0, 3.0, 0.0, 0.0, 7.0];
        let r = wilcoxon_signed_rank(&a, &b).unwrap();
        assert_eq!((r.n_negative, r.n_positive, r.n_ties), (2, 3, 1));
        assert_eq!((r.sum_negative, r.sum_positive), (4.0, 11.0));
        let want = (11.0 - 7.5) / (5.0 * 6.0 * 11.0 / 24.0f64).sqrt();
        assert!((r.z - want).abs() < 1e-12);
    }

    #[test]
    fn error_cases() {
        assert!(matches!(wilcoxon_signed_rank(&[1.0; 6], &[1.0; 6]), Err(Error::AllTies)));
        assert!(matches!(
            wilcoxon_signed_rank(&[1.0, 2.0, 3.0, 4.0, 5.0], &[1.0, 1.0, 1.0, 1.0, 1.0]),
            Err(Error::TooFewPairs { found: 4, needed: 5 })
        ));
        assert!(wilcoxon_signed_rank(&[1.0], &[1.0, 2.0]).is_err());
    }
}
