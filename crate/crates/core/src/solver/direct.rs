//! Direct control parameterization: projected gradient ascent on
//! piecewise-constant saving policies.
//!
//! The gradient of the objective with respect to each interval value comes
//! from the costate (adjoint) system. With Hamiltonian flow
//! `H = omega((1-s) phi(k)) e^{-lambda t} + p (s phi(k) - sigma k)`, the
//! costate integrates backward from `p(T) = 0` along
//!
//! ```text
//! dp/dt = -[ omega'((1-s) phi(k)) (1-s) phi'(k) e^{-lambda t} + p (s phi'(k) - sigma) ]
//! ```
//!
//! and the per-interval derivative is the time integral of
//! `phi(k) [p - omega'((1-s) phi(k)) e^{-lambda t}]` over that interval.
//! Consumption is floored (inside marginal-utility evaluations only) per the
//! model's rule, so the power family's unbounded derivative at zero
//! consumption never produces infinities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{GrowthProblem, Policy, CAPITAL_ROUNDING_TOL};
use crate::solver::{finalize_report, SolveMethod, SolveReport};

/// Backtracking line-search and discretization parameters. The defaults are
/// standard safeguarded first-order settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectOptions {
    pub max_iter: usize,
    /// Stop when the projected-gradient Euclidean norm falls below this.
    pub tol: f64,
    /// Target integration substep; each policy interval is cut into equal
    /// substeps no longer than this.
    pub dt: f64,
    pub initial_step: f64,
    pub shrink: f64,
    pub armijo: f64,
    pub max_halvings: usize,
}

impl DirectOptions {
    pub fn for_problem(problem: &GrowthProblem) -> Self {
        Self {
            max_iter: 300,
            tol: 1e-6,
            dt: problem.horizon() / 2048.0,
            initial_step: 1.0,
            shrink: 0.5,
            armijo: 1e-4,
            max_halvings: 40,
        }
    }
}

/// Forward state pass on the substep grid implied by (policy, dt): per
/// interval, equal RK4 substeps no longer than dt. Returns flattened node
/// times and states plus each interval's starting node index, and the
/// trapezoidal objective.
struct ForwardPass {
    times: Vec<f64>,
    states: Vec<f64>,
    /// `interval_start[i]` is the node index where interval `i` begins;
    /// a final entry holds the last node index.
    interval_start: Vec<usize>,
    objective: f64,
}

fn forward_pass(problem: &GrowthProblem, policy: &Policy, dt: f64) -> Result<ForwardPass> {
    let rate = |k: f64, s: f64| {
        s * problem.production.eval(k.max(0.0)) - problem.labor_growth * k
    };
    let mut times = vec![problem.t0];
    let mut states = vec![problem.k0];
    let mut interval_start = Vec::with_capacity(policy.num_intervals() + 1);
    let mut objective = 0.0;
    let mut k = problem.k0;

    for (i, &s) in policy.values().iter().enumerate() {
        interval_start.push(times.len() - 1);
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
            let k1 = rate(k, s);
            let k2 = rate(k + 0.5 * h * k1, s);
            let k3 = rate(k + 0.5 * h * k2, s);
            let k4 = rate(k + h * k3, s);
            k += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if k < -CAPITAL_ROUNDING_TOL {
                return Err(Error::NegativeCapital { k, t });
            }
            k = k.max(0.0);
            let flow = problem.utility_flow(t, k, s)?;
            objective += 0.5 * h * (flow_prev + flow);
            flow_prev = flow;
            times.push(t);
            states.push(k);
        }
    }
    interval_start.push(times.len() - 1);
    Ok(ForwardPass {
        times,
        states,
        interval_start,
        objective,
    })
}

/// Backward costate pass and per-interval gradient on the forward grid.
///
/// The costate RK4 needs the state at substep midpoints; those come from the
/// cubic Hermite interpolant of the stored nodes (state and slope are known
/// at both ends), keeping the backward pass fourth-order consistent with the
/// forward one.
fn adjoint_gradient(problem: &GrowthProblem, policy: &Policy, fwd: &ForwardPass) -> Vec<f64> {
    let lambda = problem.discount_rate;
    let sigma = problem.labor_growth;
    let phi = |k: f64| problem.production.eval(k.max(0.0));
    let dphi = |k: f64| problem.production.derivative(k.max(0.0));
    let marginal = |c: f64| problem.utility.marginal(c.max(0.0));

    let mut gradient = vec![0.0; policy.num_intervals()];
    let mut p_adj = 0.0f64; // terminal condition: no terminal payoff

    for i in (0..policy.num_intervals()).rev() {
        let s = policy.values()[i];
        let costate_rhs = |t: f64, k: f64, p: f64| {
            let discount = (-lambda * t).exp();
            -(marginal((1.0 - s) * phi(k)) * (1.0 - s) * dphi(k) * discount
                + p * (s * dphi(k) - sigma))
        };
        let switching = |t: f64, k: f64, p: f64| {
            let discount = (-lambda * t).exp();
            phi(k) * (p - marginal((1.0 - s) * phi(k)) * discount)
        };

        let lo = fwd.interval_start[i];
        let hi = fwd.interval_start[i + 1];
        let mut acc = 0.0;
        let mut g_hi = switching(fwd.times[hi], fwd.states[hi], p_adj);
        for j in (lo..hi).rev() {
            let (t0, t1) = (fwd.times[j], fwd.times[j + 1]);
            let (k0, k1) = (fwd.states[j], fwd.states[j + 1]);
            let h = t1 - t0;
            let f0 = s * phi(k0) - sigma * k0;
            let f1 = s * phi(k1) - sigma * k1;
            let k_mid = (0.5 * (k0 + k1) + 0.125 * h * (f0 - f1)).max(0.0);
            let t_mid = 0.5 * (t0 + t1);

            let r1 = costate_rhs(t1, k1, p_adj);
            let r2 = costate_rhs(t_mid, k_mid, p_adj - 0.5 * h * r1);
            let r3 = costate_rhs(t_mid, k_mid, p_adj - 0.5 * h * r2);
            let r4 = costate_rhs(t0, k0, p_adj - h * r3);
            p_adj -= h / 6.0 * (r1 + 2.0 * r2 + 2.0 * r3 + r4);

            let g_lo = switching(t0, k0, p_adj);
            acc += 0.5 * h * (g_lo + g_hi);
            g_hi = g_lo;
        }
        gradient[i] = acc;
    }
    gradient
}

/// Component-wise projection of the gradient onto the feasible directions at
/// the current point: at a clamped bound, only the inward component counts.
fn projected(gradient: &[f64], values: &[f64]) -> Vec<f64> {
    gradient
        .iter()
        .zip(values)
        .map(|(&g, &s)| {
            if s <= 0.0 {
                g.max(0.0)
            } else if s >= 1.0 {
                g.min(0.0)
            } else {
                g
            }
        })
        .collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Maximizes the objective by projected gradient ascent from `init`,
/// stopping on the projected-gradient tolerance, the iteration cap, or a
/// stalled line search. Non-convergence is not an error: the report carries
/// the best iterate with `converged = false`.
pub fn solve_direct(
    problem: &GrowthProblem,
    init: &Policy,
    opts: &DirectOptions,
) -> Result<SolveReport> {
    init.check_covers(problem.t0, problem.t_end)?;
    if problem.k0 == 0.0 && problem.production.eval(0.0) == 0.0 {
        // trapped at zero capital: consumption is zero under every policy,
        // so the initial policy is already optimal (and the costate system,
        // which sees the unbounded production slope at 0, is never run)
        return finalize_report(
            problem,
            SolveMethod::Direct,
            init.clone(),
            opts.dt,
            0,
            true,
            Some(0.0),
            None,
        );
    }
    let mut values = init.values().to_vec();
    let mut policy = init.clone();
    let mut fwd = forward_pass(problem, &policy, opts.dt)?;
    let mut improvements = 0;
    let mut converged = false;
    let mut grad_norm = f64::NAN;

    for _ in 0..opts.max_iter {
        let gradient = adjoint_gradient(problem, &policy, &fwd);
        let pg = projected(&gradient, &values);
        grad_norm = norm(&pg);
        if grad_norm <= opts.tol {
            converged = true;
            break;
        }
        if !grad_norm.is_finite() {
            // costate overflow (stiff marginal products near k = 0); keep
            // the best iterate found so far
            break;
        }

        let mut step = opts.initial_step;
        let mut accepted = false;
        for _ in 0..opts.max_halvings {
            let trial: Vec<f64> = values
                .iter()
                .zip(&gradient)
                .map(|(&s, &g)| (s + step * g).clamp(0.0, 1.0))
                .collect();
            let ascent: f64 = gradient
                .iter()
                .zip(trial.iter().zip(&values))
                .map(|(&g, (&t, &s))| g * (t - s))
                .sum();
            if ascent <= 0.0 {
                // projection absorbed the whole step
                step *= opts.shrink;
                continue;
            }
            let trial_policy = Policy::new(policy.grid().to_vec(), trial.clone())?;
            let trial_fwd = forward_pass(problem, &trial_policy, opts.dt)?;
            if trial_fwd.objective >= fwd.objective + opts.armijo * ascent {
                values = trial;
                policy = trial_policy;
                fwd = trial_fwd;
                accepted = true;
                improvements += 1;
                break;
            }
            step *= opts.shrink;
        }
        if !accepted {
            // stalled: no step length improves the objective
            break;
        }
    }

    finalize_report(
        problem,
        SolveMethod::Direct,
        policy,
        opts.dt,
        improvements,
        converged,
        Some(grad_norm),
        None,
    )
}

/// Runs [`solve_direct`] from several constant starts and keeps the best
/// objective (ties favor the earlier start).
pub fn solve_direct_multistart(
    problem: &GrowthProblem,
    n_intervals: usize,
    starts: &[f64],
    opts: &DirectOptions,
) -> Result<SolveReport> {
    let mut best: Option<SolveReport> = None;
    for &s0 in starts {
        let init = Policy::constant(problem.t0, problem.t_end, n_intervals, s0)?;
        let report = solve_direct(problem, &init, opts)?;
        if best.as_ref().is_none_or(|b| report.objective > b.objective) {
            best = Some(report);
        }
    }
    best.ok_or_else(|| Error::invalid("starts", "need at least one start value"))
}

/// Computes the derivative of the objective with respect to one interval
/// value by both routes: the adjoint integral and a central finite
/// difference of the simulated objective. The interval value must sit at
/// least `h` inside (0, 1), since a clamped one-sided move is not comparable
/// to the two-sided difference.
pub fn gradient_check(
    problem: &GrowthProblem,
    policy: &Policy,
    interval: usize,
    h: f64,
) -> Result<(f64, f64)> {
    if interval >= policy.num_intervals() {
        return Err(Error::invalid(
            "interval",
            format!("index {interval} out of {}", policy.num_intervals()),
        ));
    }
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::invalid("h", "perturbation must be positive"));
    }
    let s = policy.values()[interval];
    if s <= h || s >= 1.0 - h {
        return Err(Error::invalid(
            "interval value",
            format!("s = {s} is within {h} of a bound; one-sided derivatives are not comparable"),
        ));
    }

    let dt = problem.horizon() / 4096.0;
    let fwd = forward_pass(problem, policy, dt)?;
    let adjoint = adjoint_gradient(problem, policy, &fwd)[interval];

    let eval = |s_i: f64| -> Result<f64> {
        let mut values = policy.values().to_vec();
        values[interval] = s_i;
        let p = Policy::new(policy.grid().to_vec(), values)?;
        Ok(forward_pass(problem, &p, dt)?.objective)
    };
    let fd = (eval(s + h)? - eval(s - h)?) / (2.0 * h);
    Ok((adjoint, fd))
}
