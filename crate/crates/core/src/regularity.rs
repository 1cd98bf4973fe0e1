//! Switch-structure analysis of saving policies.
//!
//! An implementable saving policy has finitely many jump discontinuities:
//! the planning interval splits into plateaus separated by switches. The
//! detector reconstructs that structure from a piecewise-constant policy,
//! separating genuine switches from discretization chatter; the probe then
//! asks, purely numerically, whether optimal policies of the power family
//! keep at most one switch as the solver grid refines. Probe outputs are
//! labeled evidence — resolution stability is not a proof.

use serde::{Deserialize, Serialize};

use crate::conditions::{check_linear_growth, SamplePlan};
use crate::error::{Error, Result};
use crate::model::{GrowthProblem, Policy, ProblemClass, Trajectory};
use crate::solver::{solve_dp, DpGrid};

/// A maximal run of intervals with (nearly) constant control.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Plateau {
    /// First policy interval of the plateau.
    pub first_interval: usize,
    /// One past the last policy interval.
    pub end_interval: usize,
    /// Arithmetic mean of the interval values.
    pub mean: f64,
}

/// Reconstructed switch structure of a policy, plus the trajectory-level
/// Lipschitz estimate when a trajectory was attached.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    /// Interior switch times, strictly increasing, all inside (t0, t_end).
    pub switch_times: Vec<f64>,
    /// Number of switches (= number of plateaus - 1).
    pub switch_count: usize,
    /// Whether every plateau value sits within `jump_threshold` of 0 or 1.
    pub is_probably_bang_bang: bool,
    /// Largest |dk/dt| over the attached trajectory's grid; 0 until a
    /// trajectory is attached.
    pub lipschitz_estimate: f64,
    pub plateaus: Vec<Plateau>,
}

impl RegularityReport {
    /// Attaches a trajectory, filling the Lipschitz estimate with the largest
    /// finite-difference slope along it.
    pub fn with_trajectory(mut self, trajectory: &Trajectory) -> Self {
        self.lipschitz_estimate = trajectory.max_slope();
        self
    }

    /// The policy of plateau means on the plateau boundaries; feeding this
    /// back through the detector reproduces the same report.
    pub fn reconstruction(&self, policy: &Policy) -> Result<Policy> {
        let mut grid = vec![policy.grid()[0]];
        let mut values = Vec::with_capacity(self.plateaus.len());
        for p in &self.plateaus {
            grid.push(policy.grid()[p.end_interval]);
            values.push(p.mean.clamp(0.0, 1.0));
        }
        Policy::new(grid, values)
    }
}

/// Reconstructs the plateau/switch structure of a policy.
///
/// Consecutive intervals whose values differ by less than `jump_threshold`
/// merge into plateaus; plateaus shorter than `min_plateau` intervals are
/// absorbed into the neighbor with the closer mean; merging repeats until
/// every adjacent pair of plateaus differs by at least the threshold, and
/// each surviving boundary is a switch.
pub fn detect_switches(
    policy: &Policy,
    jump_threshold: f64,
    min_plateau: usize,
) -> Result<RegularityReport> {
    if !(jump_threshold > 0.0 && jump_threshold < 1.0) {
        return Err(Error::invalid(
            "jump_threshold",
            format!("must lie in (0, 1), got {jump_threshold}"),
        ));
    }
    if min_plateau < 1 {
        return Err(Error::invalid("min_plateau", "must be at least 1"));
    }

    let values = policy.values();
    // initial pass: chain-merge adjacent intervals with small jumps
    let mut plateaus: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..values.len() {
        if (values[i] - values[i - 1]).abs() >= jump_threshold {
            plateaus.push((start, i));
            start = i;
        }
    }
    plateaus.push((start, values.len()));

    let mean = |range: &(usize, usize)| -> f64 {
        values[range.0..range.1].iter().sum::<f64>() / (range.1 - range.0) as f64
    };

    loop {
        // absorb the leftmost undersized plateau into its closer neighbor
        if plateaus.len() > 1 {
            if let Some(i) = plateaus
                .iter()
                .position(|&(a, b)| b - a < min_plateau)
            {
                let m = mean(&plateaus[i]);
                let take_left = if i == 0 {
                    false
                } else if i + 1 == plateaus.len() {
                    true
                } else {
                    (m - mean(&plateaus[i - 1])).abs() <= (m - mean(&plateaus[i + 1])).abs()
                };
                if take_left {
                    plateaus[i - 1].1 = plateaus[i].1;
                } else {
                    plateaus[i + 1].0 = plateaus[i].0;
                }
                plateaus.remove(i);
                continue;
            }
        }
        // merge adjacent plateaus whose means no longer differ enough
        if let Some(i) = (0..plateaus.len().saturating_sub(1))
            .find(|&i| (mean(&plateaus[i + 1]) - mean(&plateaus[i])).abs() < jump_threshold)
        {
            plateaus[i].1 = plateaus[i + 1].1;
            plateaus.remove(i + 1);
            continue;
        }
        break;
    }

    let plateaus: Vec<Plateau> = plateaus
        .iter()
        .map(|&(a, b)| Plateau {
            first_interval: a,
            end_interval: b,
            mean: mean(&(a, b)),
        })
        .collect();
    let switch_times: Vec<f64> = plateaus[..plateaus.len() - 1]
        .iter()
        .map(|p| policy.grid()[p.end_interval])
        .collect();
    let is_probably_bang_bang = plateaus
        .iter()
        .all(|p| p.mean.min(1.0 - p.mean) <= jump_threshold);

    Ok(RegularityReport {
        switch_count: plateaus.len() - 1,
        switch_times,
        is_probably_bang_bang,
        lipschitz_estimate: 0.0,
        plateaus,
    })
}

/// Outcome of the Lipschitz-bound check on a trajectory: every discrete
/// slope must respect `|dk/dt| <= sup phi + sigma * max k` (the dynamics
/// bound), within 1e-6 slack.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LipschitzCheck {
    pub ok: bool,
    pub max_slope: f64,
    pub bound: f64,
    /// Index of the first violating node interval, when any.
    pub violating_node: Option<usize>,
}

/// Checks the discrete Lipschitz bound along a trajectory. `phi_bound` must
/// dominate `phi` over the trajectory's capital range.
pub fn lipschitz_check(trajectory: &Trajectory, phi_bound: f64, sigma: f64) -> LipschitzCheck {
    let bound = phi_bound + sigma * trajectory.max_capital() + 1e-6;
    let mut max_slope: f64 = 0.0;
    let mut violating_node = None;
    for (i, (t, k)) in trajectory
        .grid
        .windows(2)
        .zip(trajectory.k.windows(2))
        .enumerate()
    {
        let slope = ((k[1] - k[0]) / (t[1] - t[0])).abs();
        max_slope = max_slope.max(slope);
        if slope > bound && violating_node.is_none() {
            violating_node = Some(i);
        }
    }
    LipschitzCheck {
        ok: violating_node.is_none(),
        max_slope,
        bound,
        violating_node,
    }
}

/// One grid resolution for the refinement probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DpResolution {
    pub n_t: usize,
    pub n_k: usize,
    pub n_s: usize,
}

/// Switch structure observed at one resolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolutionOutcome {
    pub resolution: DpResolution,
    pub switch_count: usize,
    pub switch_times: Vec<f64>,
    pub objective: f64,
}

/// Numeric probe of the at-most-one-switch question for the power family.
/// The `label` field is always `"evidence"`: a resolution-stable count
/// supports the expectation but proves nothing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureProbe {
    pub outcomes: Vec<ResolutionOutcome>,
    /// Whether the two finest resolutions report the same switch count.
    pub stable: bool,
    pub max_switch_count: usize,
    pub label: String,
}

/// Solves a power-family instance at each resolution with the dynamic
/// program, detects switches in each solved policy, and reports whether the
/// count is stable across the top two resolutions.
pub fn probe_single_switch_conjecture(
    problem: &GrowthProblem,
    resolutions: &[DpResolution],
    jump_threshold: f64,
    min_plateau: usize,
) -> Result<ConjectureProbe> {
    if problem.classify() == ProblemClass::Other {
        return Err(Error::invalid(
            "problem",
            "the switch-count probe is defined for power-family instances only",
        ));
    }
    if resolutions.is_empty() {
        return Err(Error::invalid("resolutions", "need at least one resolution"));
    }
    let growth_constant = check_linear_growth(
        &problem.production,
        problem.labor_growth,
        &SamplePlan::default(),
    )
    .growth_constant()
    .expect("power-family production always certifies a growth constant");

    let mut outcomes = Vec::with_capacity(resolutions.len());
    for &res in resolutions {
        let grid = DpGrid::new(problem, growth_constant, res.n_t, res.n_k, res.n_s)?;
        let report = solve_dp(problem, &grid)?;
        let structure = detect_switches(&report.policy, jump_threshold, min_plateau)?;
        outcomes.push(ResolutionOutcome {
            resolution: res,
            switch_count: structure.switch_count,
            switch_times: structure.switch_times,
            objective: report.objective,
        });
    }
    let stable = match outcomes.len() {
        1 => true,
        n => outcomes[n - 1].switch_count == outcomes[n - 2].switch_count,
    };
    Ok(ConjectureProbe {
        max_switch_count: outcomes.iter().map(|o| o.switch_count).max().unwrap(),
        stable,
        outcomes,
        label: "evidence".to_string(),
    })
}
