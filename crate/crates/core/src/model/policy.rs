//! Piecewise-constant saving policies and integrated capital trajectories.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rounding slack below 0 tolerated in integrated capital values before the
/// clamp-to-zero rule applies. Anything more negative is a model violation.
pub const CAPITAL_ROUNDING_TOL: f64 = 1e-9;

/// Slack allowed when validating control values against [0, 1] and grid
/// endpoints against the planning interval.
pub const CONTROL_TOL: f64 = 1e-12;

/// A piecewise-constant saving control on an explicit time grid:
/// `values[i]` applies on `[grid[i], grid[i+1])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Policy {
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl Policy {
    /// Builds a policy after validating that the grid ascends strictly and
    /// every value lies in [0, 1] (values within `1e-12` beyond a bound are
    /// clamped onto it).
    pub fn new(grid: Vec<f64>, mut values: Vec<f64>) -> Result<Self> {
        if grid.len() < 2 {
            return Err(Error::invalid("policy grid", "need at least 2 grid times"));
        }
        if values.len() + 1 != grid.len() {
            return Err(Error::invalid(
                "policy",
                format!("{} grid times need {} values, got {}", grid.len(), grid.len() - 1, values.len()),
            ));
        }
        if grid.iter().any(|g| !g.is_finite()) {
            return Err(Error::invalid("policy grid", "times must be finite"));
        }
        for w in grid.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::invalid(
                    "policy grid",
                    format!("times must ascend strictly: {} then {}", w[0], w[1]),
                ));
            }
        }
        for v in &mut values {
            if !v.is_finite() || *v < -CONTROL_TOL || *v > 1.0 + CONTROL_TOL {
                return Err(Error::ControlOutOfRange { s: *v });
            }
            *v = v.clamp(0.0, 1.0);
        }
        Ok(Self { grid, values })
    }

    /// Uniform grid over `[t0, t_end]` with the given interval values.
    pub fn uniform(t0: f64, t_end: f64, values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::invalid("policy", "need at least one interval"));
        }
        let mut grid = Vec::with_capacity(n + 1);
        for i in 0..=n {
            grid.push(t0 + (t_end - t0) * i as f64 / n as f64);
        }
        grid[n] = t_end;
        Policy::new(grid, values)
    }

    /// Constant policy `s ≡ value` on `n` uniform intervals.
    pub fn constant(t0: f64, t_end: f64, n: usize, value: f64) -> Result<Self> {
        Policy::uniform(t0, t_end, vec![value; n])
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn num_intervals(&self) -> usize {
        self.values.len()
    }

    pub fn t0(&self) -> f64 {
        self.grid[0]
    }

    pub fn t_end(&self) -> f64 {
        *self.grid.last().unwrap()
    }

    /// The control value in force at time `t` (right-continuous; the final
    /// interval also covers `t_end`).
    pub fn value_at(&self, t: f64) -> f64 {
        let i = match self
            .grid
            .binary_search_by(|g| g.partial_cmp(&t).unwrap())
        {
            Ok(i) => i.min(self.values.len() - 1),
            Err(0) => 0,
            Err(i) => (i - 1).min(self.values.len() - 1),
        };
        self.values[i]
    }

    /// Re-expresses the policy on a uniform grid with `n` intervals, sampling
    /// the original at each new interval's midpoint.
    pub fn resample_uniform(&self, n: usize) -> Result<Policy> {
        let t0 = self.t0();
        let t_end = self.t_end();
        let values = (0..n)
            .map(|i| {
                let mid = t0 + (t_end - t0) * (i as f64 + 0.5) / n as f64;
                self.value_at(mid)
            })
            .collect();
        Policy::uniform(t0, t_end, values)
    }

    /// Checks that this policy covers exactly `[t0, t_end]`.
    pub fn check_covers(&self, t0: f64, t_end: f64) -> Result<()> {
        let scale = 1.0 + t0.abs().max(t_end.abs());
        if (self.t0() - t0).abs() > CONTROL_TOL * scale
            || (self.t_end() - t_end).abs() > CONTROL_TOL * scale
        {
            return Err(Error::invalid(
                "policy grid",
                format!(
                    "covers [{}, {}] but the problem needs [{t0}, {t_end}]",
                    self.t0(),
                    self.t_end()
                ),
            ));
        }
        Ok(())
    }
}

/// An integrated capital path under a policy, with the running discounted
/// objective accumulated on the same grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    /// Integration grid times, `grid[0] = t0`, ascending.
    pub grid: Vec<f64>,
    /// Capital ratio at each grid node, nonnegative.
    pub k: Vec<f64>,
    /// Control value on each subinterval (`len = grid.len() - 1`).
    pub s: Vec<f64>,
    /// Running objective: `cumulative[i]` is the quadrature of the discounted
    /// utility flow over `[grid[0], grid[i]]`; `cumulative[0] = 0`.
    pub cumulative: Vec<f64>,
    /// Total discounted utility over the whole interval
    /// (`= *cumulative.last()`).
    pub objective: f64,
}

impl Trajectory {
    /// Largest capital value along the path.
    pub fn max_capital(&self) -> f64 {
        self.k.iter().cloned().fold(0.0, f64::max)
    }

    /// Largest finite-difference slope `|dk/dt|` between adjacent nodes.
    pub fn max_slope(&self) -> f64 {
        self.grid
            .windows(2)
            .zip(self.k.windows(2))
            .map(|(t, k)| ((k[1] - k[0]) / (t[1] - t[0])).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grid_is_exact_at_both_ends() {
        let p = Policy::constant(0.0, 1.0, 7, 0.3).unwrap();
        assert_eq!(p.t0(), 0.0);
        assert_eq!(p.t_end(), 1.0);
        assert_eq!(p.num_intervals(), 7);
        p.check_covers(0.0, 1.0).unwrap();
    }

    #[test]
    fn rejects_out_of_range_values() {
        assert!(Policy::uniform(0.0, 1.0, vec![0.5, 1.5]).is_err());
        assert!(Policy::uniform(0.0, 1.0, vec![-0.5]).is_err());
        // values a hair outside [0,1] are clamped, not rejected
        let p = Policy::uniform(0.0, 1.0, vec![1.0 + 1e-13, -1e-13]).unwrap();
        assert_eq!(p.values(), &[1.0, 0.0]);
    }

    #[test]
    fn value_lookup_is_right_continuous() {
        let p = Policy::new(vec![0.0, 0.5, 1.0], vec![0.2, 0.8]).unwrap();
        assert_eq!(p.value_at(0.0), 0.2);
        assert_eq!(p.value_at(0.49), 0.2);
        assert_eq!(p.value_at(0.5), 0.8);
        assert_eq!(p.value_at(1.0), 0.8);
    }

    #[test]
    fn resample_keeps_plateaus() {
        let p = Policy::new(vec![0.0, 0.6, 1.0], vec![1.0, 0.0]).unwrap();
        let r = p.resample_uniform(10).unwrap();
        assert_eq!(r.num_intervals(), 10);
        assert_eq!(r.value_at(0.05), 1.0);
        assert_eq!(r.value_at(0.95), 0.0);
    }
}
