use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::special::f_sf;
use super::{median, ALPHA};
use crate::error::{invalid, Error, Result};

/// Proportion cut from each end for the trimmed-mean center.
pub const TRIM_PROPORTION: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeveneCenter {
    Mean,
    Median,
    TrimmedMean,
}

impl LeveneCenter {
    pub const ALL: [LeveneCenter; 3] = [LeveneCenter::Mean, LeveneCenter::Median, LeveneCenter::TrimmedMean];

    pub fn label(self) -> &'static str {
        match self {
            LeveneCenter::Mean => "mean",
            LeveneCenter::Median => "median",
            LeveneCenter::TrimmedMean => "trimmed_mean",
        }
    }

    fn center(self, group: &[f64]) -> f64 {
        match self {
            LeveneCenter::Mean => group.iter().sum::<f64>() / group.len() as f64,
            LeveneCenter::Median => median(group).expect("groups are non-empty"),
            LeveneCenter::TrimmedMean => {
                let mut s = group.to_vec();
                s.sort_by(f64::total_cmp);
                let cut = (TRIM_PROPORTION * s.len() as f64) as usize;
                let kept = &s[cut..s.len() - cut];
                kept.iter().sum::<f64>() / kept.len() as f64
            }
        }
    }
}

impl fmt::Display for LeveneCenter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for LeveneCenter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LeveneCenter::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| invalid("center", format!("unknown Levene center `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeveneReport {
    pub center: LeveneCenter,
    pub statistic: f64,
    pub df1: usize,
    pub df2: usize,
    pub p_value: f64,
    pub alpha: f64,
}

/// Levene's test: one-way ANOVA on absolute deviations from each group's center.
pub fn levene(groups: &[Vec<f64>], center: LeveneCenter) -> Result<LeveneReport> {
    if groups.len() < 2 {
        return Err(Error::DegenerateInput(format!("need at least 2 groups, got {}", groups.len())));
    }
    if let Some(g) = groups.iter().position(|g| g.len() < 2) {
        return Err(Error::DegenerateInput(format!("group {g} has fewer than 2 values")));
    }
    let devs: Vec<Vec<f64>> = groups
        .iter()
        .map(|g| {
            let c = center.center(g);
            g.iter().map(|v| (v - c).abs()).collect()
        })
        .collect();
    if devs.iter().flatten().all(|d| *d == 0.0) {
        return Err(Error::DegenerateInput("all deviations from the group centers are zero".into()));
    }
    let total: usize = devs.iter().map(Vec::len).sum();
    let grand = devs.iter().flatten().sum::<f64>() / total as f64;
    let (mut ssb, mut ssw) = (0.0, 0.0);
    for d in &devs {
        let m = d.iter().sum::<f64>() / d.len() as f64;
        ssb += d.len() as f64 * (m - grand).powi(2);
        ssw += d.iter().map(|v| (v - m).powi(2)).sum::<f64>();
    }
    let df1 = groups.len() - 1;
    let df2 = total - groups.len();
    let statistic = if ssw == 0.0 { f64::INFINITY } else { (ssb / df1 as f64) / (ssw / df2 as f64) };
    Ok(LeveneReport {
        center,
        statistic,
        df1,
        df2,
        p_value: f_sf(statistic, df1 as f64, df2 as f64),
        alpha: ALPHA,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_computed_mean_center() {
        let r = levene(&[vec![0.0, 2.0, 1.0], vec![1.0, 1.0, 1.0]], LeveneCenter::Mean).unwrap();
        assert!((r.statistic - 4.0).abs() < 1e-12);
        assert_eq!((r.df1, r.df2), (1, 4));
    }

    #[test]
    fn identical_groups_give_zero() {
        let g = vec![1.0, 3.0, 4.0, 9.0];
        let r = levene(&[g.clone(), g], LeveneCenter::Median).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn six_groups_of_150_degrees_of_freedom() {
        let groups: Vec<Vec<f64>> = (0..6).map(|g| (0..150).map(|i| ((i * 7 + g * 3) % 11) as f64).collect()).collect();
        let r = levene(&groups, LeveneCenter::TrimmedMean).unwrap();
        assert_eq!((r.df1, r.df2), (5, 894));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(levene(&[vec![1.0, 1.0], vec![2.0, 2.0]], LeveneCenter::Mean).is_err());
        assert!(levene(&[vec![1.0, 2.0]], LeveneCenter::Mean).is_err());
        assert!(levene(&[vec![1.0], vec![2.0, 3.0]], LeveneCenter::Mean).is_err());
        assert_eq!("trimmed_mean".parse::<LeveneCenter>().unwrap(), LeveneCenter::TrimmedMean);
    }
}
