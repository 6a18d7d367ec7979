use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Source of the random numbers consumed by the update rules.
///
/// Production code uses [`RngStream`]; tests script exact values with
/// [`ScriptedDraws`] so a hand-computed update can be compared bit for bit.
pub trait Draws {
    /// Uniform on `[0, 1)`.
    fn rand(&mut self) -> f64;
    /// Standard normal.
    fn randn(&mut self) -> f64;
    /// Uniform on `0..n`.
    fn index(&mut self, n: usize) -> usize;
}

/// Seeded ChaCha8 stream. The same seed and call sequence always yields the
/// same draws, on every platform.
#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Draws for RngStream {
    fn rand(&mut self) -> f64 {
        self.rng.random()
    }

    fn randn(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}

/// Replays pre-recorded draws. Once a queue is empty the matching fallback is
/// returned; without a fallback an exhausted queue panics, which is what a
/// hand-trace test wants.
#[derive(Debug, Clone, Default)]
pub struct ScriptedDraws {
    uniform: VecDeque<f64>,
    normal: VecDeque<f64>,
    indices: VecDeque<usize>,
    uniform_fallback: Option<f64>,
    normal_fallback: Option<f64>,
    round_robin: usize,
}

impl ScriptedDraws {
    pub fn new(uniform: &[f64], normal: &[f64], indices: &[usize]) -> Self {
        Self {
            uniform: uniform.iter().copied().collect(),
            normal: normal.iter().copied().collect(),
            indices: indices.iter().copied().collect(),
            ..Self::default()
        }
    }

    /// Every `rand` returns `u` and every `randn` returns `n`; indices cycle
    /// through `0..n` starting at 0.
    pub fn constant(u: f64, n: f64) -> Self {
        Self {
            uniform_fallback: Some(u),
            normal_fallback: Some(n),
            ..Self::default()
        }
    }

    pub fn with_fallbacks(mut self, u: f64, n: f64) -> Self {
        self.uniform_fallback = Some(u);
        self.normal_fallback = Some(n);
        self
    }

    /// Draws not yet consumed, as `(uniform, normal, indices)`.
    pub fn remaining(&self) -> (usize, usize, usize) {
        (self.uniform.len(), self.normal.len(), self.indices.len())
    }
}

impl Draws for ScriptedDraws {
    fn rand(&mut self) -> f64 {
        self.uniform
            .pop_front()
            .or(self.uniform_fallback)
            .expect("scripted uniform draws exhausted")
    }

    fn randn(&mut self) -> f64 {
        self.normal
            .pop_front()
            .or(self.normal_fallback)
            .expect("scripted normal draws exhausted")
    }

    fn index(&mut self, n: usize) -> usize {
        match self.indices.pop_front() {
            Some(k) => {
                assert!(k < n, "scripted index {k} out of range 0..{n}");
                k
            }
            None => {
                // Deterministic round robin so rejection loops terminate.
                let k = self.round_robin % n;
                self.round_robin += 1;
                k
            }
        }
    }
}

/// `k` distinct indices from `0..n`, none equal to `exclude`.
pub(crate) fn distinct_indices<D: Draws + ?Sized, const K: usize>(
    draws: &mut D,
    n: usize,
    exclude: usize,
) -> [usize; K] {
    debug_assert!(n > K, "need at least {} members", K + 1);
    let mut out = [usize::MAX; K];
    let mut filled = 0;
    let mut fallback = 0;
    while filled < K {
        let mut k = draws.index(n);
        if k == exclude || out[..filled].contains(&k) {
            // Scripted streams may keep returning the same value; walk forward instead of spinning.
            fallback += 1;
            if fallback > 64 {
                k = (0..n).find(|c| *c != exclude && !out[..filled].contains(c)).unwrap();
            } else {
                continue;
            }
        }
        out[filled] = k;
        filled += 1;
    }
    out
}

/// One member index from `0..n` other than `exclude`.
pub(crate) fn other_index<D: Draws + ?Sized>(draws: &mut D, n: usize, exclude: usize) -> usize {
    distinct_indices::<D, 1>(draws, n, exclude)[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stream_is_reproducible() {
        let mut a = RngStream::new(42);
        let mut b = RngStream::new(42);
        for _ in 0..100 {
            assert_eq!(a.rand().to_bits(), b.rand().to_bits());
            assert_eq!(a.randn().to_bits(), b.randn().to_bits());
            assert_eq!(a.index(17), b.index(17));
        }
        let mut c = RngStream::new(43);
        assert_ne!(RngStream::new(42).rand(), c.rand());
    }

    #[test]
    fn uniform_range_and_normal_moments() {
        let mut s = RngStream::new(1);
        let n = 200_000;
        let mut sum = 0.0;
        let mut sq = 0.0;
        for _ in 0..n {
            let u = s.rand();
            assert!((0.0..1.0).contains(&u));
            let z = s.randn();
            sum += z;
            sq += z * z;
        }
        let mean = sum / n as f64;
        assert!(mean.abs() < 0.01, "{mean}");
        assert!((sq / n as f64 - 1.0).abs() < 0.02);
    }

    #[test]
    fn distinct_indices_exclude_self() {
        let mut s = RngStream::new(9);
        for i in 0..6 {
            for _ in 0..200 {
                let a: [usize; 4] = distinct_indices(&mut s, 6, i);
                assert!(!a.contains(&i));
                for p in 0..4 {
                    for q in p + 1..4 {
                        assert_ne!(a[p], a[q]);
                    }
                }
            }
        }
    }

    #[test]
    fn scripted_replays_then_falls_back() {
        let mut s = ScriptedDraws::new(&[0.1, 0.2], &[1.5], &[3]).with_fallbacks(0.9, -1.0);
        assert_eq!(s.rand(), 0.1);
        assert_eq!(s.rand(), 0.2);
        assert_eq!(s.rand(), 0.9);
        assert_eq!(s.randn(), 1.5);
        assert_eq!(s.randn(), -1.0);
        assert_eq!(s.index(5), 3);
        let picked: [usize; 2] = distinct_indices(&mut s, 3, 0);
        assert!(!picked.contains(&0) && picked[0] != picked[1]);
    }
}
