use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Axis-aligned box of admissible decision vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpace {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Default for SearchSpace {
    /// Controller gain box, ordered `(kp1, ki1, kd1, kp2, ki2, kd2)`.
    fn default() -> Self {
        Self {
            lower: vec![-16.0, -45.0, -8.0, -16.0, -45.0, -8.0],
            upper: vec![-6.0, -15.0, -3.0, -6.0, -15.0, -3.0],
        }
    }
}

impl SearchSpace {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let s = Self { lower, upper };
        s.validate()?;
        Ok(s)
    }

    /// `[lo, hi]^dim`.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Self {
        Self {
            lower: vec![lo; dim],
            upper: vec![hi; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.lower.is_empty() || self.lower.len() != self.upper.len() {
            return Err(invalid("search_space", "lower and upper must be non-empty and equally long"));
        }
        for (j, (lo, hi)) in self.lower.iter().zip(&self.upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(invalid(
                    "search_space",
                    format!("dimension {j}: need finite lower < upper, got [{lo}, {hi}]"),
                ));
            }
        }
        Ok(())
    }

    pub fn width(&self, j: usize) -> f64 {
        self.upper[j] - self.lower[j]
    }

    pub fn contains(&self, v: &[f64]) -> bool {
        v.len() == self.dim()
            && v.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(x, (lo, hi))| *lo <= *x && *x <= *hi)
    }

    /// Componentwise clip into the box. NaN components go to the lower bound.
    pub fn clamp(&self, v: &[f64]) -> Vec<f64> {
        let mut out = v.to_vec();
        self.clamp_in_place(&mut out);
        out
    }

    pub fn clamp_in_place(&self, v: &mut [f64]) {
        for ((x, lo), hi) in v.iter_mut().zip(&self.lower).zip(&self.upper) {
            *x = if x.is_nan() { *lo } else { x.clamp(*lo, *hi) };
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| lo + rng.random::<f64>() * (hi - lo))
            .collect()
    }
}
