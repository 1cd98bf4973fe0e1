//! Fixed-step trajectory integration.
//!
//! Classical 4th-order one-step integration of the capital dynamics under a
//! piecewise-constant control. Steps never straddle a policy breakpoint: each
//! policy interval is cut into equal substeps no longer than the requested
//! `dt`, so the control is constant within every step and the integrand is
//! smooth on every quadrature cell. The running objective is accumulated by
//! the composite trapezoidal rule on the same grid.

use crate::error::{Error, Result};
use crate::model::{validate_capital, GrowthProblem, Policy, Trajectory, CAPITAL_ROUNDING_TOL};

/// One RK4 step of `dk/dt = s phi(k) - sigma k` with constant `s`.
#[inline]
fn rk4_step(problem: &GrowthProblem, k: f64, s: f64, h: f64) -> f64 {
    let f = |k: f64| s * problem.production.eval(k.max(0.0)) - problem.labor_growth * k;
    let k1 = f(k);
    let k2 = f(k + 0.5 * h * k1);
    let k3 = f(k + 0.5 * h * k2);
    let k4 = f(k + h * k3);
    k + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Integrates the dynamics under `policy` with steps no longer than `dt`,
/// returning the full trajectory with its trapezoidal objective.
///
/// Capital values in `[-1e-9, 0)` are clamped to 0 (only rounding can push
/// the exact flow below zero); a more negative value is reported as a model
/// violation.
pub fn integrate(problem: &GrowthProblem, policy: &Policy, dt: f64) -> Result<Trajectory> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::invalid("dt", format!("must be > 0, got {dt}")));
    }
    policy.check_covers(problem.t0, problem.t_end)?;

    let mut grid = vec![problem.t0];
    let mut k_nodes = vec![validate_capital(problem.k0, problem.t0)?];
    let mut s_nodes = Vec::new();
    let mut cumulative = vec![0.0];

    let mut k = k_nodes[0];
    let mut acc = 0.0;

    for (i, &s) in policy.values().iter().enumerate() {
        let t_lo = policy.grid()[i];
        let t_hi = policy.grid()[i + 1];
        let len = t_hi - t_lo;
        let n_sub = (len / dt).ceil().max(1.0) as usize;
        let h = len / n_sub as f64;

        let mut flow_prev = problem.utility_flow(t_lo, k, s)?;
        for j in 1..=n_sub {
            let t = if j == n_sub {
                t_hi
            } else {
                t_lo + len * j as f64 / n_sub as f64
            };
            k = rk4_step(problem, k, s, h);
            if k < -CAPITAL_ROUNDING_TOL {
                return Err(Error::NegativeCapital { k, t });
            }
            k = k.max(0.0);
            let flow = problem.utility_flow(t, k, s)?;
            acc += 0.5 * h * (flow_prev + flow);
            flow_prev = flow;

            grid.push(t);
            k_nodes.push(k);
            s_nodes.push(s);
            cumulative.push(acc);
        }
    }

    Ok(Trajectory {
        grid,
        k: k_nodes,
        s: s_nodes,
        objective: acc,
        cumulative,
    })
}
