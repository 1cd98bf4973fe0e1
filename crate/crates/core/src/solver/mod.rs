//! Numerical solvers for the growth problem.
//!
//! Two independent methods so each can catch the other's bugs: a backward
//! semi-Lagrangian dynamic program on a log-spaced state grid (the oracle),
//! and a projected adjoint-gradient ascent on piecewise-constant controls
//! (the scalable solver). Both report policies re-simulated through the same
//! fixed-step integrator, and neither ever returns an objective below the
//! zero-saving baseline.

pub mod direct;
pub mod dp;
pub mod integrate;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{GrowthProblem, Policy, Trajectory};
pub use direct::{gradient_check, solve_direct, solve_direct_multistart, DirectOptions};
pub use dp::{solve_dp, DpGrid};
pub use integrate::integrate;

/// Which solver produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    Dp,
    Direct,
}

/// The value function's initial-time slice over the state grid (the full
/// time-indexed table is solver-internal).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueSlice {
    pub states: Vec<f64>,
    pub values: Vec<f64>,
}

/// Solver output: the policy, its re-simulated trajectory, and the achieved
/// objective, plus method-specific diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub method: SolveMethod,
    pub policy: Policy,
    pub trajectory: Trajectory,
    /// Discounted utility achieved by `policy`, computed by re-simulating it
    /// through the integrator (equals `trajectory.objective`).
    pub objective: f64,
    /// Backward steps (DP) or accepted ascent steps (direct).
    pub iterations: usize,
    /// False only for the direct method when it stopped on the iteration cap
    /// or a stalled line search rather than the gradient tolerance.
    pub converged: bool,
    /// Final projected-gradient norm (direct method only).
    pub gradient_norm_final: Option<f64>,
    /// Initial-time value-function slice (DP only).
    pub value_function: Option<ValueSlice>,
    /// Set when the solved policy underperformed the zero-saving baseline
    /// and the baseline process was returned instead.
    pub fell_back_to_baseline: bool,
}

/// Packages a solved policy into a report, enforcing the floor of the
/// zero-saving baseline: if re-simulating the policy does worse than the
/// analytic baseline process, the baseline is returned instead. The solvers
/// only ever improve on the known feasible point.
#[allow(clippy::too_many_arguments)]
pub(crate) fn finalize_report(
    problem: &GrowthProblem,
    method: SolveMethod,
    policy: Policy,
    dt: f64,
    iterations: usize,
    converged: bool,
    gradient_norm_final: Option<f64>,
    value_function: Option<ValueSlice>,
) -> Result<SolveReport> {
    let trajectory = integrate(problem, &policy, dt)?;
    let baseline = problem.baseline_process();
    if baseline.objective > trajectory.objective {
        let n = policy.num_intervals();
        let zero_policy = Policy::constant(problem.t0, problem.t_end, n, 0.0)?;
        return Ok(SolveReport {
            method,
            policy: zero_policy,
            objective: baseline.objective,
            trajectory: baseline,
            iterations,
            converged,
            gradient_norm_final,
            value_function,
            fell_back_to_baseline: true,
        });
    }
    Ok(SolveReport {
        method,
        policy,
        objective: trajectory.objective,
        trajectory,
        iterations,
        converged,
        gradient_norm_final,
        value_function,
        fell_back_to_baseline: false,
    })
}
