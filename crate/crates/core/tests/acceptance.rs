//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured figure next to its pinned tolerance.
//!
//! Criterion 9 (CLI determinism and report round-trip) lives in the CLI
//! crate's own acceptance target; everything upstream of the CLI is here.

mod common;

use std::time::Instant;

use growth_core::conditions::{
    check_attainable_convexity, check_linear_growth, check_phi_concavity,
    check_two_factor_concavity, check_two_factor_growth, default_limsup_probes, estimate_limsup,
    SamplePlan, VerdictStatus, Witness,
};
use growth_core::model::{
    GrowthProblem, Policy, ProblemClass, ProductionFunction, TwoFactorProduction, UtilityFunction,
};
use growth_core::regularity::{detect_switches, probe_single_switch_conjecture, DpResolution};
use growth_core::solver::{
    gradient_check, integrate, solve_dp, solve_direct_multistart, DirectOptions, DpGrid,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pass(criterion: u32, detail: impl std::fmt::Display) {
    println!("ACCEPTANCE {criterion} PASS: {detail}");
}

/// Criterion 1: with zero saving, the integrator reproduces the analytic
/// decay k0 e^{-sigma (t - t0)} within 1e-8 at every node for 20 random
/// parameter draws (dt = 1e-3).
#[test]
fn criterion_1_baseline_analytic_agreement() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let k0 = rng.gen_range(0.0..3.0);
        let sigma = rng.gen_range(0.1..2.0);
        let horizon = rng.gen_range(0.3..2.0);
        let problem = GrowthProblem::new(
            0.0,
            horizon,
            0.0,
            sigma,
            k0,
            ProductionFunction::ak(1.0).unwrap(),
            UtilityFunction::Linear,
        )
        .unwrap();
        let policy = Policy::constant(0.0, horizon, 1, 0.0).unwrap();
        let traj = integrate(&problem, &policy, 1e-3).unwrap();
        for (&t, &k) in traj.grid.iter().zip(&traj.k) {
            let exact = k0 * (-sigma * t).exp();
            worst = worst.max((k - exact).abs());
        }
    }
    assert!(worst <= 1e-8, "max node error {worst:.3e} exceeds 1e-8");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:.2?}, budget 5 s");
    pass(1, format!("max node error {worst:.3e} <= 1e-8 over 20 draws in {elapsed:.2?}"));
}

/// Criterion 2: over a 100+ function corpus, the growth-bound verdict equals
/// the limsup finiteness flag, and the per-capita and two-factor verdicts
/// agree pairwise (growth for four sigmas, concavity), with zero
/// disagreements.
#[test]
fn criterion_2_condition_equivalence_suite() {
    let start = Instant::now();
    let plan = SamplePlan::default();
    let probes = default_limsup_probes();
    let corpus = common::corpus();
    let mut disagreements = Vec::new();

    for entry in &corpus {
        let growth = check_linear_growth(&entry.phi, 0.5, &plan);
        let limsup = estimate_limsup(&entry.phi, &probes).unwrap();
        if growth.holds() != limsup.finite {
            disagreements.push(format!(
                "{}: growth {:?} vs limsup finite {}",
                entry.name, growth.status, limsup.finite
            ));
        }
        if growth.holds() != entry.linear_growth {
            disagreements.push(format!("{}: growth verdict contradicts construction", entry.name));
        }

        let f = TwoFactorProduction::new(entry.phi.clone());
        for sigma in [0.1, 0.5, 1.0, 2.0] {
            let phi_v = check_linear_growth(&entry.phi, sigma, &plan);
            let f_v = check_two_factor_growth(&f, sigma, &plan);
            if phi_v.holds() != f_v.holds() {
                disagreements.push(format!(
                    "{}: sigma {sigma}: phi-level {:?} vs F-level {:?}",
                    entry.name, phi_v.status, f_v.status
                ));
            }
        }

        let c_phi = check_phi_concavity(&entry.phi, &plan);
        let c_f = check_two_factor_concavity(&f, &plan);
        if c_phi.holds() != c_f.holds() {
            disagreements.push(format!(
                "{}: concavity phi-level {:?} vs F-level {:?}",
                entry.name, c_phi.status, c_f.status
            ));
        }
    }

    assert!(
        disagreements.is_empty(),
        "{} disagreements:\n{}",
        disagreements.len(),
        disagreements.join("\n")
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:.2?}, budget 30 s");
    pass(2, format!("0 disagreements across {} functions in {elapsed:.2?}", corpus.len()));
}

/// Criterion 3: the attainable-set boundary test passes for every concave
/// utility over >= 1e3 sampled tuples, and refutes the constructed convex
/// utility (midpoint gap 0.25 at the control pair (0, 1)).
#[test]
fn criterion_3_attainable_set_convexity() {
    let start = Instant::now();
    let concave_utilities = vec![
        UtilityFunction::Linear,
        UtilityFunction::power(0.3).unwrap(),
        UtilityFunction::power(0.5).unwrap(),
        UtilityFunction::power(1.0).unwrap(),
        // concave piecewise-linear table (slopes 2, 1, 0.5)
        UtilityFunction::custom(vec![0.0, 1.0, 2.0, 4.0], vec![0.0, 2.0, 3.0, 4.0]).unwrap(),
    ];
    let mut tuples = 0usize;
    for (u_idx, utility) in concave_utilities.into_iter().enumerate() {
        let problem = GrowthProblem::new(
            0.0,
            1.0,
            0.1,
            0.5,
            1.0,
            ProductionFunction::cobb_douglas(1.0, 0.5).unwrap(),
            utility,
        )
        .unwrap();
        for (i, &t) in [0.0, 0.5, 1.0].iter().enumerate() {
            for (j, &k) in [0.0, 0.5, 1.0, 5.0].iter().enumerate() {
                let seed = (u_idx * 100 + i * 10 + j) as u64;
                let v = check_attainable_convexity(&problem, t, k, 100, seed).unwrap();
                assert_eq!(
                    v.status,
                    VerdictStatus::SampledTrue,
                    "concave utility refuted at t={t}, k={k}: {v:?}"
                );
                tuples += 100;
            }
        }
    }
    assert!(tuples >= 1000);

    // the constructed counterexample: omega(c) = c^2 (tabulated exactly at
    // its own breakpoints), phi ≡ 1
    let convex = GrowthProblem::new(
        0.0,
        1.0,
        0.0,
        0.5,
        1.0,
        ProductionFunction::tabulated(vec![0.0, 1.0], vec![1.0, 1.0]).unwrap(),
        UtilityFunction::custom(vec![0.0, 0.5, 1.0], vec![0.0, 0.25, 1.0]).unwrap(),
    )
    .unwrap();
    let v = check_attainable_convexity(&convex, 0.0, 1.0, 100, 0).unwrap();
    assert_eq!(v.status, VerdictStatus::Refuted);
    match v.witness.unwrap() {
        Witness::ControlPair { s1, s2, gap } => {
            assert_eq!((s1, s2), (0.0, 1.0));
            assert!((gap - 0.25).abs() <= 1e-9, "midpoint gap {gap} != 0.25");
        }
        w => panic!("unexpected witness {w:?}"),
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:.2?}, budget 5 s");
    pass(3, format!("{tuples} concave tuples clean; convex counterexample refuted with gap 0.25 in {elapsed:.2?}"));
}

/// Criterion 4: on one instance per power-family type, the DP oracle
/// (2000 x 800 x 101) and the direct method (64 intervals, multi-start
/// {0, 0.5, 1}) agree within 1% relative, and neither falls below the
/// zero-saving baseline. The certified state bound is respected.
#[test]
fn criterion_4_solver_cross_validation() {
    let start = Instant::now();
    let mut lines = Vec::new();
    for (class, problem) in common::acceptance_instances() {
        let baseline = problem.baseline_process().objective;
        let c = check_linear_growth(&problem.production, problem.labor_growth, &SamplePlan::default())
            .growth_constant()
            .unwrap();
        let grid = DpGrid::new(&problem, c, 2000, 800, 101).unwrap();
        let dp = solve_dp(&problem, &grid).unwrap();

        let opts = DirectOptions::for_problem(&problem);
        let direct = solve_direct_multistart(&problem, 64, &[0.0, 0.5, 1.0], &opts).unwrap();

        let rel = (dp.objective - direct.objective).abs() / dp.objective.max(1.0);
        assert!(
            rel <= 0.01,
            "{class:?}: dp {} vs direct {} disagree by {rel:.3e}",
            dp.objective,
            direct.objective
        );
        assert!(
            dp.objective >= baseline - 1e-8,
            "{class:?}: dp {} below baseline {baseline}",
            dp.objective
        );
        assert!(
            direct.objective >= baseline - 1e-8,
            "{class:?}: direct {} below baseline {baseline}",
            direct.objective
        );
        // feasibility and the certified bound
        let k_bound = problem.state_upper_bound(c).unwrap();
        for report in [&dp, &direct] {
            assert!(report.policy.values().iter().all(|&s| (0.0..=1.0).contains(&s)));
            assert!(report.trajectory.k.iter().all(|&k| k >= -1e-9));
            assert_eq!(report.trajectory.k[0], problem.k0);
            assert!(report.trajectory.max_capital() <= k_bound + 1e-6);
        }
        lines.push(format!("{class:?} rel {rel:.1e}"));
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "took {elapsed:.2?}, budget 5 min");
    pass(4, format!("dp vs direct within 1% on all four types ({}) in {elapsed:.2?}", lines.join(", ")));
}

/// Criterion 5: doubling both N_t and N_k on the linear-linear instance
/// changes the DP objective by no more than the previous refinement's change.
#[test]
fn criterion_5_dp_refinement_stability() {
    let start = Instant::now();
    let (class, problem) = common::acceptance_instances().remove(0);
    assert_eq!(class, ProblemClass::LinearLinear);
    let mut objectives = Vec::new();
    for (n_t, n_k) in [(500, 200), (1000, 400), (2000, 800)] {
        let grid = DpGrid::new(&problem, 1.5, n_t, n_k, 101).unwrap();
        objectives.push(solve_dp(&problem, &grid).unwrap().objective);
    }
    let first = (objectives[1] - objectives[0]).abs();
    let second = (objectives[2] - objectives[1]).abs();
    assert!(
        second <= first + 1e-12,
        "refinement changes grew: {first:.3e} then {second:.3e}"
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "took {elapsed:.2?}, budget 5 min");
    pass(5, format!("refinement changes {first:.2e} -> {second:.2e} (non-increasing) in {elapsed:.2?}"));
}

/// Criterion 6: adjoint and central-difference gradients agree within 1e-4
/// relative at h = 1e-5 on 50 random (instance, interval) draws.
#[test]
fn criterion_6_adjoint_gradient_check() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    let mut worst = (0.0f64, String::new());
    for draw in 0..50 {
        let alpha = if rng.gen_bool(0.5) { 1.0 } else { rng.gen_range(0.3..0.9) };
        let beta = if rng.gen_bool(0.5) { 1.0 } else { rng.gen_range(0.3..0.9) };
        let production = if alpha >= 1.0 {
            ProductionFunction::ak(rng.gen_range(0.5..2.0)).unwrap()
        } else {
            ProductionFunction::cobb_douglas(rng.gen_range(0.5..2.0), alpha).unwrap()
        };
        let problem = GrowthProblem::new(
            0.0,
            rng.gen_range(0.5..2.0),
            rng.gen_range(0.0..0.2),
            rng.gen_range(0.2..1.0),
            rng.gen_range(0.2..2.0),
            production,
            UtilityFunction::power(beta).unwrap(),
        )
        .unwrap();
        let n = 16;
        let values: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..0.8)).collect();
        let policy = Policy::uniform(problem.t0, problem.t_end, values).unwrap();
        let interval = rng.gen_range(0..n);
        let (adj, fd) = gradient_check(&problem, &policy, interval, 1e-5).unwrap();
        let rel = (adj - fd).abs() / adj.abs().max(fd.abs()).max(1e-6);
        if rel > worst.0 {
            worst = (rel, format!("draw {draw}: adjoint {adj:.6e} vs fd {fd:.6e}"));
        }
    }
    assert!(worst.0 <= 1e-4, "worst relative disagreement {:.3e} ({})", worst.0, worst.1);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:.2?}, budget 1 min");
    pass(6, format!("worst relative disagreement {:.2e} <= 1e-4 over 50 draws in {elapsed:.2?}", worst.0));
}

/// Criterion 7: on 100 synthetic policies with 0-3 known switches (plateau
/// gaps >= 0.4, plateau lengths >= 3 intervals), the detector recovers the
/// exact count and each location within one grid interval.
#[test]
fn criterion_7_detector_exactness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..100 {
        let switches = case % 4;
        let plateaus = switches + 1;
        // plateau lengths >= 3 intervals
        let lengths: Vec<usize> = (0..plateaus).map(|_| rng.gen_range(3..12)).collect();
        let n: usize = lengths.iter().sum();
        // plateau values with adjacent gaps >= 2 * jump_threshold = 0.4
        let mut levels = vec![rng.gen_range(0.0..=1.0)];
        for _ in 1..plateaus {
            let prev: f64 = *levels.last().unwrap();
            let lo_room = prev - 0.4;
            let hi_room = 1.0 - (prev + 0.4);
            let go_low = if lo_room >= 0.0 && hi_room >= 0.0 {
                rng.gen_bool(0.5)
            } else {
                lo_room >= 0.0
            };
            levels.push(if go_low {
                rng.gen_range(0.0..=lo_room)
            } else {
                rng.gen_range(prev + 0.4..=1.0)
            });
        }
        let mut values = Vec::with_capacity(n);
        let mut boundaries = Vec::new();
        for (len, &level) in lengths.iter().zip(&levels) {
            values.extend(std::iter::repeat_n(level, *len));
            boundaries.push(values.len());
        }
        boundaries.pop();

        let policy = Policy::uniform(0.0, 1.0, values).unwrap();
        let expected_times: Vec<f64> = boundaries.iter().map(|&b| policy.grid()[b]).collect();
        let report = detect_switches(&policy, 0.2, 3).unwrap();
        assert_eq!(
            report.switch_count, switches,
            "case {case}: expected {switches} switches, got {} (levels {levels:?}, lengths {lengths:?})",
            report.switch_count
        );
        let dt = 1.0 / n as f64;
        for (det, exp) in report.switch_times.iter().zip(&expected_times) {
            assert!(
                (det - exp).abs() <= dt + 1e-12,
                "case {case}: switch at {det} vs expected {exp} (one interval = {dt})"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:.2?}, budget 5 s");
    pass(7, format!("100/100 synthetic policies recovered exactly in {elapsed:.2?}"));
}

/// Criterion 8: the switch-count probe runs on all four power-family
/// instances at three resolutions; the count is stable across the top two
/// resolutions and the output is labeled evidence.
#[test]
fn criterion_8_switch_count_probe() {
    let start = Instant::now();
    let resolutions = [
        DpResolution { n_t: 500, n_k: 200, n_s: 51 },
        DpResolution { n_t: 1000, n_k: 400, n_s: 71 },
        DpResolution { n_t: 2000, n_k: 800, n_s: 101 },
    ];
    let mut counts = Vec::new();
    for (class, problem) in common::acceptance_instances() {
        let probe = probe_single_switch_conjecture(&problem, &resolutions, 0.2, 3).unwrap();
        assert_eq!(probe.label, "evidence");
        assert!(
            probe.stable,
            "{class:?}: switch counts not stable across top resolutions: {:?}",
            probe
                .outcomes
                .iter()
                .map(|o| o.switch_count)
                .collect::<Vec<_>>()
        );
        counts.push(format!(
            "{class:?}={}",
            probe.outcomes.last().unwrap().switch_count
        ));
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "took {elapsed:.2?}, budget 5 min");
    pass(8, format!("stable switch counts ({}) labeled evidence in {elapsed:.2?}", counts.join(", ")));
}
