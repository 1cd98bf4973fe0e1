//! Problem data and the elementary model operations: controlled dynamics,
//! discounted utility flow, the zero-saving analytic baseline, and the
//! a-priori state bound used to size solver grids.

pub mod policy;
pub mod problem;
pub mod production;
pub mod utility;

pub use policy::{Policy, Trajectory, CAPITAL_ROUNDING_TOL, CONTROL_TOL};
pub use problem::{GrowthProblem, ProblemClass};
pub use production::{ProductionFunction, TabulatedFn, TwoFactorProduction};
pub use utility::{UtilityFunction, MARGINAL_CONSUMPTION_FLOOR};

use crate::error::{Error, Result};

/// Validates a capital value: clamps rounding-level negatives to 0, rejects
/// anything below `-1e-12`. (Integration steps get the looser `-1e-9` slack
/// and clamp before evaluating model operations.)
pub fn validate_capital(k: f64, t: f64) -> Result<f64> {
    if k >= 0.0 {
        Ok(k)
    } else if k >= -CONTROL_TOL {
        Ok(0.0)
    } else {
        Err(Error::NegativeCapital { k, t })
    }
}

/// Validates a control value against [0, 1] with rounding slack `1e-12`.
pub fn validate_control(s: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&s) {
        Ok(s)
    } else if (-CONTROL_TOL..=1.0 + CONTROL_TOL).contains(&s) {
        Ok(s.clamp(0.0, 1.0))
    } else {
        Err(Error::ControlOutOfRange { s })
    }
}

impl GrowthProblem {
    /// Right-hand side of the capital dynamics,
    /// `dk/dt = s phi(k) - sigma k`. The dynamics are autonomous, so no time
    /// argument is needed.
    pub fn capital_rate(&self, k: f64, s: f64) -> Result<f64> {
        let k = validate_capital(k, self.t0)?;
        let s = validate_control(s)?;
        Ok(s * self.production.eval(k) - self.labor_growth * k)
    }

    /// Instantaneous discounted utility flow,
    /// `omega((1 - s) phi(k)) e^{-lambda t}`.
    pub fn utility_flow(&self, t: f64, k: f64, s: f64) -> Result<f64> {
        let k = validate_capital(k, t)?;
        let s = validate_control(s)?;
        let consumption = (1.0 - s) * self.production.eval(k);
        Ok(self.utility.eval(consumption) * (-self.discount_rate * t).exp())
    }

    /// The closed-form feasible process with `s ≡ 0`: capital decays as
    /// `k(t) = k0 e^{-sigma (t - t0)}` and the objective is the trapezoidal
    /// quadrature of the utility flow along it. Every solver output is
    /// required to do at least as well as this process.
    pub fn baseline_process(&self) -> Trajectory {
        const STEPS: usize = 2048;
        let n = STEPS;
        let mut grid = Vec::with_capacity(n + 1);
        let mut k = Vec::with_capacity(n + 1);
        let mut cumulative = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        let mut prev_flow = 0.0;
        for i in 0..=n {
            let t = if i == n {
                self.t_end
            } else {
                self.t0 + self.horizon() * i as f64 / n as f64
            };
            let ki = self.k0 * (-self.labor_growth * (t - self.t0)).exp();
            let flow = self
                .utility_flow(t, ki, 0.0)
                .expect("baseline state is feasible by construction");
            if i > 0 {
                let dt = t - grid[i - 1];
                acc += 0.5 * dt * (prev_flow + flow);
            }
            grid.push(t);
            k.push(ki);
            cumulative.push(acc);
            prev_flow = flow;
        }
        Trajectory {
            grid,
            k,
            s: vec![0.0; n],
            objective: acc,
            cumulative,
        }
    }

    /// A-priori bound on any feasible capital path:
    /// `K_max = (k0 + 1) e^{c (t_end - t0)} - 1`, where `c` certifies the
    /// growth bound `|s phi(k) - sigma k| <= c (k + 1)`. Used to size solver
    /// state grids.
    pub fn state_upper_bound(&self, growth_constant: f64) -> Result<f64> {
        if !(growth_constant >= 0.0 && growth_constant.is_finite()) {
            return Err(Error::MissingCertificate(format!(
                "growth constant must be a finite nonnegative real, got {growth_constant}"
            )));
        }
        Ok((self.k0 + 1.0) * (growth_constant * self.horizon()).exp() - 1.0)
    }

    /// Reachability radius at time `t`: the state bound for the truncated
    /// horizon `[t0, t]`. Grows monotonically from `k0` to the full
    /// [`state_upper_bound`](Self::state_upper_bound).
    pub fn reach_radius(&self, growth_constant: f64, t: f64) -> f64 {
        (self.k0 + 1.0) * (growth_constant * (t - self.t0)).exp() - 1.0
    }
}
