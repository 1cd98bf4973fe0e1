//! Deterministic sampling plans shared by the condition checkers.
//!
//! Sampled checks can prove refutation but only support truth, so the plans
//! are fixed and reproducible: grids are deterministic, and point pairs come
//! from a seeded generator so that verdicts are identical across runs and
//! worker counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default seed for pair sampling. Overridable per plan (the CLI exposes
/// `--seed`).
pub const DEFAULT_SEED: u64 = 0x5EED_5EED;

/// `n` log-spaced points from `lo` to `hi` inclusive (`lo > 0`).
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && lo > 0.0 && hi > lo);
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| match i {
            0 => lo,
            i if i == n - 1 => hi,
            i => (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

/// `n` uniformly spaced points from `lo` to `hi` inclusive.
pub fn lin_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && hi > lo);
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Sampling plan for the capital half-line: a log-spaced grid over
/// `[0, k_max]` that is dense near 0 (where the power-family slope is
/// unbounded), a block of uniformly spaced points in `[0, 1]`, and a budget
/// of seeded point pairs for midpoint tests.
#[derive(Debug, Clone)]
pub struct SamplePlan {
    /// Upper end of the sampled capital range.
    pub k_max: f64,
    /// Number of points in the log-spaced block (including `k = 0`).
    pub n_log: usize,
    /// Number of uniformly spaced points in `[0, 1]`.
    pub n_unit: usize,
    /// Number of seeded pairs for midpoint concavity/convexity tests.
    pub n_pairs: usize,
    /// Seed for pair draws.
    pub seed: u64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        Self {
            k_max: 1e6,
            n_log: 4096,
            n_unit: 512,
            n_pairs: 4096,
            seed: DEFAULT_SEED,
        }
    }
}

impl SamplePlan {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    /// The full sample grid: `{0}`, log-spaced points from `1e-6 * k_max/1e6`
    /// up to `k_max`, then the unit block. Ascending within each block, not
    /// globally sorted.
    pub fn k_grid(&self) -> Vec<f64> {
        let mut grid = Vec::with_capacity(self.n_log + self.n_unit);
        grid.push(0.0);
        grid.extend(log_spaced(1e-6, self.k_max, self.n_log - 1));
        grid.extend(lin_spaced(0.0, 1.0, self.n_unit));
        grid
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// Seeded index pairs into a grid of length `len`.
    pub fn index_pairs(&self, len: usize) -> Vec<(usize, usize)> {
        let mut rng = self.rng();
        (0..self.n_pairs)
            .map(|_| (rng.gen_range(0..len), rng.gen_range(0..len)))
            .collect()
    }

    /// Seeded pairs of points in `[0, 1]`.
    pub fn unit_pairs(&self, n: usize) -> Vec<(f64, f64)> {
        let mut rng = self.rng();
        (0..n)
            .map(|_| (rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0)))
            .collect()
    }

    /// Seeded pairs of planar points `(capital, labor)` with capital in
    /// `[0, k_max]` (log-distributed, with some mass at 0) and labor
    /// log-distributed in `[l_min, l_max]`.
    pub fn plane_pairs(&self, l_min: f64, l_max: f64) -> Vec<((f64, f64), (f64, f64))> {
        let mut rng = self.rng();
        let draw_k = {
            let k_max = self.k_max;
            move |rng: &mut ChaCha8Rng| -> f64 {
                if rng.gen_range(0..16) == 0 {
                    0.0
                } else {
                    let u: f64 = rng.gen_range((1e-6f64).ln()..=k_max.ln());
                    u.exp()
                }
            }
        };
        let draw_l = {
            let (llo, lhi) = (l_min.ln(), l_max.ln());
            move |rng: &mut ChaCha8Rng| -> f64 { rng.gen_range(llo..=lhi).exp() }
        };
        (0..self.n_pairs)
            .map(|_| {
                let a = (draw_k(&mut rng), draw_l(&mut rng));
                let b = (draw_k(&mut rng), draw_l(&mut rng));
                (a, b)
            })
            .collect()
    }
}

/// Default probe ladder for the asymptotic ratio `phi(k)/k`: 2000 points per
/// decade from `1e2` to `1e14`. The density matters: the finiteness flag
/// compares block maxima of the ratio, and coarse probes under-sample the
/// peaks of slowly oscillating ratios enough to fake a trend.
pub fn default_limsup_probes() -> Vec<f64> {
    log_spaced(1e2, 1e14, 24_001)
}
