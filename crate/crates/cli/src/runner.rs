//! Scenario execution and parameter sweeps.

use std::path::{Path, PathBuf};

use growth_core::conditions::{condition_report, SamplePlan};
use growth_core::model::{GrowthProblem, Policy, ProblemClass};
use growth_core::regularity::{detect_switches, probe_single_switch_conjecture, DpResolution};
use growth_core::solver::{solve_direct, solve_dp, DirectOptions, DpGrid, SolveReport};

use crate::config::{ProductionSpec, ScenarioConfig, SolveMethodSpec, UtilitySpec};
use crate::report::{trajectory_csv, write_with_context, RunReport};

/// Process exit codes, as documented in the CLI help.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_NOT_ESTABLISHED: i32 = 4;

/// A scenario failure, tagged with the exit code it maps to.
#[derive(Debug)]
pub struct RunError {
    pub exit_code: i32,
    pub message: String,
}

impl RunError {
    fn config(message: impl Into<String>) -> Self {
        Self {
            exit_code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    fn solver(message: impl Into<String>) -> Self {
        Self {
            exit_code: EXIT_SOLVER,
            message: message.into(),
        }
    }
}

/// Behavior switches shared by `run` and `sweep`.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    /// Solve even when no existence conclusion was established.
    pub force: bool,
    /// Seed for the condition-sampling plans.
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            force: false,
            seed: growth_core::conditions::sampling::DEFAULT_SEED,
        }
    }
}

/// Fallback growth constant for forced runs: the largest sampled value of
/// `(phi(k) + sigma k) / (k + 1)`. Uncertified — forced runs on genuinely
/// superlinear production can still overflow the state bound and fail.
fn heuristic_growth_constant(problem: &GrowthProblem, plan: &SamplePlan) -> f64 {
    plan.k_grid()
        .iter()
        .map(|&k| (problem.production.eval(k) + problem.labor_growth * k) / (k + 1.0))
        .fold(0.0, f64::max)
}

/// Executes one scenario: condition report, existence gate, solves,
/// regularity analysis, probe, and artifact writing. Paths in the config are
/// resolved relative to `base_dir`.
pub fn run_scenario(
    config: &ScenarioConfig,
    base_dir: &Path,
    opts: &RunOptions,
) -> Result<RunReport, RunError> {
    config.validate().map_err(RunError::config)?;
    let problem = config.problem.build().map_err(RunError::config)?;
    let plan = SamplePlan::with_seed(opts.seed);

    let conditions = condition_report(&problem, &plan)
        .map_err(|e| RunError::solver(format!("condition report failed: {e}")))?;

    let mut report = RunReport {
        version: config.version,
        scenario: config.clone(),
        solved: false,
        forced: opts.force,
        conditions,
        dp: None,
        direct: None,
        regularity: None,
        conjecture_probe: None,
    };

    if !report.conditions.existence.established() && !opts.force {
        // caller decides: exit 4 after writing nothing
        return Err(RunError {
            exit_code: EXIT_NOT_ESTABLISHED,
            message: format!(
                "no existence conclusion for this instance (class {:?}, growth bound {:?}); \
                 pass --force to solve anyway",
                report.conditions.class, report.conditions.linear_growth.status
            ),
        });
    }

    let growth_constant = report
        .conditions
        .growth_certificate()
        .unwrap_or_else(|| heuristic_growth_constant(&problem, &plan));

    let solver = &config.solver;
    if matches!(solver.method, SolveMethodSpec::Dp | SolveMethodSpec::Both) {
        let grid = DpGrid::new(&problem, growth_constant, solver.n_t, solver.n_k, solver.n_s)
            .map_err(|e| RunError::solver(format!("dp grid: {e}")))?;
        let dp = solve_dp(&problem, &grid).map_err(|e| RunError::solver(format!("dp: {e}")))?;
        report.dp = Some(dp);
    }
    if matches!(solver.method, SolveMethodSpec::Direct | SolveMethodSpec::Both) {
        let init = Policy::constant(problem.t0, problem.t_end, solver.n_intervals, 0.5)
            .map_err(|e| RunError::solver(format!("direct init: {e}")))?;
        let options = DirectOptions {
            max_iter: solver.max_iter,
            tol: solver.tol,
            ..DirectOptions::for_problem(&problem)
        };
        let direct = solve_direct(&problem, &init, &options)
            .map_err(|e| RunError::solver(format!("direct: {e}")))?;
        report.direct = Some(direct);
    }
    report.solved = true;

    // regularity of the best policy found (ties favor the dp oracle)
    if let Some(best) = best_report(&report) {
        let structure = detect_switches(
            &best.policy,
            config.regularity.jump_threshold,
            config.regularity.min_plateau,
        )
        .map_err(|e| RunError::solver(format!("switch detection: {e}")))?
        .with_trajectory(&best.trajectory);
        report.regularity = Some(structure);
    }

    if !config.regularity.resolutions.is_empty()
        && report.conditions.class != ProblemClass::Other
    {
        let resolutions: Vec<DpResolution> = config
            .regularity
            .resolutions
            .iter()
            .map(|&r| r.into())
            .collect();
        let probe = probe_single_switch_conjecture(
            &problem,
            &resolutions,
            config.regularity.jump_threshold,
            config.regularity.min_plateau,
        )
        .map_err(|e| RunError::solver(format!("switch-count probe: {e}")))?;
        report.conjecture_probe = Some(probe);
    }

    // artifacts
    if let Some(best) = best_report(&report) {
        let csv = trajectory_csv(&problem, &best.trajectory);
        write_with_context(&base_dir.join(&config.outputs.trajectory_csv), &csv)
            .map_err(RunError::config)?;
    }
    write_with_context(&base_dir.join(&config.outputs.report_json), &report.to_json())
        .map_err(RunError::config)?;

    Ok(report)
}

/// The report whose policy the artifacts describe: best objective, dp on ties.
pub fn best_report(report: &RunReport) -> Option<&SolveReport> {
    match (&report.dp, &report.direct) {
        (Some(dp), Some(direct)) => Some(if direct.objective > dp.objective {
            direct
        } else {
            dp
        }),
        (Some(dp), None) => Some(dp),
        (None, Some(direct)) => Some(direct),
        (None, None) => None,
    }
}

/// Sweepable parameter axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    ProductionScale,
    ProductionExponent,
    UtilityExponent,
    LaborGrowth,
    DiscountRate,
    InitialCapital,
    HorizonEnd,
}

impl SweepAxis {
    pub fn parse(name: &str) -> Result<Self, String> {
        match name {
            "A" => Ok(SweepAxis::ProductionScale),
            "alpha" => Ok(SweepAxis::ProductionExponent),
            "beta" => Ok(SweepAxis::UtilityExponent),
            "sigma" => Ok(SweepAxis::LaborGrowth),
            "lambda" => Ok(SweepAxis::DiscountRate),
            "k0" => Ok(SweepAxis::InitialCapital),
            "T" => Ok(SweepAxis::HorizonEnd),
            other => Err(format!(
                "unknown sweep axis {other:?}; expected one of A, alpha, beta, sigma, lambda, k0, T"
            )),
        }
    }
}

/// Applies one sweep value to a copy of the base config. Setting `alpha` to
/// 1 switches power production to the linear variant (the power family
/// includes it as the boundary exponent).
pub fn apply_axis(
    base: &ScenarioConfig,
    axis: SweepAxis,
    value: f64,
) -> Result<ScenarioConfig, String> {
    let mut config = base.clone();
    match axis {
        SweepAxis::ProductionScale => match &mut config.problem.production {
            ProductionSpec::Ak { scale } | ProductionSpec::CobbDouglas { scale, .. } => {
                *scale = value;
            }
            other => {
                return Err(format!(
                    "axis A applies to ak/cobb_douglas production, not {other:?}"
                ))
            }
        },
        SweepAxis::ProductionExponent => {
            let scale = match &config.problem.production {
                ProductionSpec::Ak { scale } => *scale,
                ProductionSpec::CobbDouglas { scale, .. } => *scale,
                other => {
                    return Err(format!(
                        "axis alpha applies to ak/cobb_douglas production, not {other:?}"
                    ))
                }
            };
            config.problem.production = if (value - 1.0).abs() < 1e-12 {
                ProductionSpec::Ak { scale }
            } else {
                ProductionSpec::CobbDouglas {
                    scale,
                    exponent: value,
                }
            };
        }
        SweepAxis::UtilityExponent => {
            config.problem.utility = if (value - 1.0).abs() < 1e-12 {
                UtilitySpec::Linear
            } else {
                UtilitySpec::Power { exponent: value }
            };
        }
        SweepAxis::LaborGrowth => config.problem.labor_growth = value,
        SweepAxis::DiscountRate => config.problem.discount_rate = value,
        SweepAxis::InitialCapital => config.problem.k0 = value,
        SweepAxis::HorizonEnd => config.problem.t_end = value,
    }
    Ok(config)
}

/// Outcome of one sweep row.
#[derive(Debug)]
pub struct SweepRow {
    pub value: f64,
    pub objective_dp: Option<f64>,
    pub objective_direct: Option<f64>,
    pub switch_count: Option<usize>,
    /// "ok" or the failure class.
    pub status: String,
    pub exit_code: i32,
}

/// Runs the base scenario once per axis value into indexed subdirectories of
/// `out_dir`, then writes `summary.csv`. Per-value failures are recorded and
/// skipped. Returns the rows and the overall exit code (0, or the first
/// failure's code). `jobs` bounds how many values run concurrently.
pub fn run_sweep(
    base: &ScenarioConfig,
    base_dir: &Path,
    axis: SweepAxis,
    values: &[f64],
    out_dir: &Path,
    jobs: usize,
    opts: &RunOptions,
) -> Result<Vec<SweepRow>, RunError> {
    if values.is_empty() {
        return Err(RunError::config("sweep: need at least one value"));
    }
    let jobs = jobs.max(1);

    let run_one = |(index, &value): (usize, &f64)| -> SweepRow {
        let sub: PathBuf = out_dir.join(format!("value_{index:03}"));
        let configured = apply_axis(base, axis, value).and_then(|mut c| {
            c.outputs.trajectory_csv = sub
                .join("trajectory.csv")
                .to_str()
                .ok_or("non-utf8 path")?
                .to_string();
            c.outputs.report_json = sub
                .join("report.json")
                .to_str()
                .ok_or("non-utf8 path")?
                .to_string();
            c.validate()?;
            Ok(c)
        });
        match configured {
            Err(message) => SweepRow {
                value,
                objective_dp: None,
                objective_direct: None,
                switch_count: None,
                status: format!("config_error: {message}"),
                exit_code: EXIT_CONFIG,
            },
            Ok(config) => match run_scenario(&config, base_dir, opts) {
                Ok(report) => SweepRow {
                    value,
                    objective_dp: report.dp.as_ref().map(|r| r.objective),
                    objective_direct: report.direct.as_ref().map(|r| r.objective),
                    switch_count: report.regularity.as_ref().map(|r| r.switch_count),
                    status: "ok".into(),
                    exit_code: EXIT_OK,
                },
                Err(e) => SweepRow {
                    value,
                    objective_dp: None,
                    objective_direct: None,
                    switch_count: None,
                    status: match e.exit_code {
                        EXIT_NOT_ESTABLISHED => format!("not_established: {}", e.message),
                        EXIT_CONFIG => format!("config_error: {}", e.message),
                        _ => format!("solver_error: {}", e.message),
                    },
                    exit_code: e.exit_code,
                },
            },
        }
    };

    // chunked execution bounds concurrency at `jobs`; rows stay in sweep order
    let mut rows: Vec<SweepRow> = Vec::with_capacity(values.len());
    for chunk in values.iter().enumerate().collect::<Vec<_>>().chunks(jobs) {
        let chunk_rows: Vec<SweepRow> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunk
                .iter()
                .map(|&(i, v)| scope.spawn(move || run_one((i, v))))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        });
        rows.extend(chunk_rows);
    }

    let mut summary = String::from("value,objective_dp,objective_direct,switch_count,status\n");
    for row in &rows {
        let fmt_opt = |x: Option<f64>| x.map(|v| format!("{v:.11e}")).unwrap_or_default();
        summary.push_str(&format!(
            "{:.11e},{},{},{},{}\n",
            row.value,
            fmt_opt(row.objective_dp),
            fmt_opt(row.objective_direct),
            row.switch_count.map(|c| c.to_string()).unwrap_or_default(),
            row.status.replace(',', ";").replace('\n', " "),
        ));
    }
    write_with_context(&base_dir.join(out_dir).join("summary.csv"), &summary)
        .map_err(RunError::config)?;

    Ok(rows)
}

/// The overall sweep exit code: 0 when every row succeeded, otherwise the
/// first failing row's code.
pub fn sweep_exit_code(rows: &[SweepRow]) -> i32 {
    rows.iter()
        .map(|r| r.exit_code)
        .find(|&c| c != EXIT_OK)
        .unwrap_or(EXIT_OK)
}
