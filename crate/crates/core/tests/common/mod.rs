//! Shared fixtures for the integration and acceptance suites: a corpus of
//! production functions with known growth behavior, and the four canonical
//! power-family instances.

// each test binary uses a different slice of this module
#![allow(dead_code)]

use growth_core::conditions::sampling::log_spaced;
use growth_core::model::{GrowthProblem, ProblemClass, ProductionFunction, UtilityFunction};

/// A production function with its ground-truth growth behavior (known by
/// construction).
pub struct CorpusEntry {
    pub name: String,
    pub phi: ProductionFunction,
    /// Whether `phi` genuinely grows at most linearly.
    pub linear_growth: bool,
}

/// Tabulates `f` on `{0} ∪ log-spaced(1e-3, k_hi)` knots.
pub fn tabulate(name: &str, f: impl Fn(f64) -> f64, k_hi: f64, n: usize) -> ProductionFunction {
    let mut knots = vec![0.0];
    knots.extend(log_spaced(1e-3, k_hi, n));
    let values: Vec<f64> = knots.iter().map(|&k| f(k).max(0.0)).collect();
    ProductionFunction::tabulated(knots, values)
        .unwrap_or_else(|e| panic!("corpus table {name} failed to build: {e}"))
}

/// At least 100 production functions spanning the linear, power, plateau, and
/// tabulated families, with sub-, exactly-, and super-linear growth.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut entries = Vec::new();
    let mut push = |name: String, phi: ProductionFunction, linear_growth: bool| {
        entries.push(CorpusEntry {
            name,
            phi,
            linear_growth,
        });
    };

    // 20 linear production functions
    for &scale in log_spaced(0.1, 10.0, 20).iter() {
        push(
            format!("ak[A={scale:.3}]"),
            ProductionFunction::ak(scale).unwrap(),
            true,
        );
    }

    // 24 power production functions
    for &scale in &[0.3, 1.0, 3.0] {
        for &alpha in &[0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.9, 0.99] {
            push(
                format!("cobb_douglas[A={scale},alpha={alpha}]"),
                ProductionFunction::cobb_douglas(scale, alpha).unwrap(),
                true,
            );
        }
    }

    // 24 plateau-ramp functions (continuous, nonconcave, linear growth)
    for &threshold in &[0.5, 2.0, 10.0] {
        for &gain in &[0.5, 2.0] {
            for &base in &[0.0, 2.0] {
                for &exponent in &[0.5, 1.0] {
                    push(
                        format!("plateau[k={threshold},a={gain},p0={base},alpha={exponent}]"),
                        ProductionFunction::plateau_power(threshold, base, gain, exponent)
                            .unwrap(),
                        true,
                    );
                }
            }
        }
    }

    // tabulated, genuinely at-most-linear growth
    for &scale in &[0.5, 1.0, 2.0, 3.0, 5.0] {
        push(
            format!("tab_sqrt[A={scale}]"),
            tabulate("sqrt", |k| scale * k.sqrt(), 1e7, 400),
            true,
        );
    }
    for &exponent in &[0.3, 0.7] {
        for &scale in &[1.0, 2.0] {
            push(
                format!("tab_pow[A={scale},alpha={exponent}]"),
                tabulate("pow", |k| scale * k.powf(exponent), 1e7, 400),
                true,
            );
        }
    }
    for &slope in &[0.5, 2.0] {
        push(
            format!("tab_affine_offset[a={slope}]"),
            tabulate("affine_offset", |k| slope * k + 3.0, 1e7, 400),
            true,
        );
    }
    push(
        "tab_three_slopes".into(),
        tabulate(
            "three_slopes",
            |k| {
                if k <= 1.0 {
                    3.0 * k
                } else if k <= 10.0 {
                    3.0 + (k - 1.0)
                } else {
                    12.0 + 0.2 * (k - 10.0)
                }
            },
            1e7,
            400,
        ),
        true,
    );
    for &scale in &[1.0, 5.0] {
        push(
            format!("tab_saturating[A={scale}]"),
            tabulate("saturating", |k| scale * k / (1.0 + k), 1e7, 400),
            true,
        );
        push(
            format!("tab_log[A={scale}]"),
            tabulate("log", |k| scale * (1.0 + k).ln(), 1e7, 400),
            true,
        );
        push(
            format!("tab_linear[A={scale}]"),
            tabulate("linear", |k| scale * k, 1e7, 400),
            true,
        );
        push(
            format!("tab_const[c={scale}]"),
            tabulate("const", |_| scale, 1e3, 50),
            true,
        );
    }
    push(
        "tab_atan".into(),
        tabulate("atan", |k| 2.0 * k.atan(), 1e7, 400),
        true,
    );
    // concave kink (slopes 2 then 0.5) and convex kink (slopes 0.5 then 2);
    // both have linear growth, only the first is concave
    for &kink in &[1.0, 5.0] {
        push(
            format!("tab_concave_kink[at={kink}]"),
            tabulate(
                "concave_kink",
                move |k| {
                    if k <= kink {
                        2.0 * k
                    } else {
                        2.0 * kink + 0.5 * (k - kink)
                    }
                },
                1e7,
                400,
            ),
            true,
        );
        push(
            format!("tab_convex_kink[at={kink}]"),
            tabulate(
                "convex_kink",
                move |k| {
                    if k <= kink {
                        0.5 * k
                    } else {
                        0.5 * kink + 2.0 * (k - kink)
                    }
                },
                1e7,
                400,
            ),
            true,
        );
    }
    // oscillating ratio with a finite limsup of 3; tabulated past the
    // deepest asymptotic probe (1e14) and densely enough in log space that
    // chord undershoot at ratio peaks stays below the estimator's tolerance
    push(
        "tab_oscillating".into(),
        tabulate("oscillating", |k| k * (2.0 + (1.0 + k).ln().sin()), 1e15, 34_500),
        true,
    );

    // tabulated superlinear growth: tables span far past the verification
    // range, so no finite constant certified on the probed prefix survives
    for (name, f) in [
        ("tab_square", Box::new(|k: f64| k * k) as Box<dyn Fn(f64) -> f64>),
        ("tab_pow_1_5", Box::new(|k: f64| k.powf(1.5))),
        ("tab_pow_1_2", Box::new(|k: f64| k.powf(1.2))),
        ("tab_pow_1_1", Box::new(|k: f64| k.powf(1.1))),
        ("tab_cube", Box::new(|k: f64| k * k * k / 1e3)),
        ("tab_k_log_k", Box::new(|k: f64| k * (1.0 + k).ln())),
        ("tab_mixed_super", Box::new(|k: f64| 0.5 * k * k + k)),
    ] {
        push(name.into(), tabulate(name, &f, 1e7, 400), false);
    }

    assert!(entries.len() >= 100, "corpus has only {}", entries.len());
    entries
}

/// The four canonical power-family instances: A = 1, sigma = 0.5, k0 = 1,
/// horizon [0, 1]; exponents 0.5 or 1 per type, discount 0 or 0.05.
pub fn acceptance_instances() -> Vec<(ProblemClass, GrowthProblem)> {
    let inst = |alpha: f64, beta: f64, lambda: f64| -> GrowthProblem {
        let production = if alpha >= 1.0 {
            ProductionFunction::ak(1.0).unwrap()
        } else {
            ProductionFunction::cobb_douglas(1.0, alpha).unwrap()
        };
        GrowthProblem::new(
            0.0,
            1.0,
            lambda,
            0.5,
            1.0,
            production,
            UtilityFunction::power(beta).unwrap(),
        )
        .unwrap()
    };
    vec![
        (ProblemClass::LinearLinear, inst(1.0, 1.0, 0.0)),
        (ProblemClass::LinearNonlinear, inst(1.0, 0.5, 0.05)),
        (ProblemClass::NonlinearLinear, inst(0.5, 1.0, 0.0)),
        (ProblemClass::NonlinearNonlinear, inst(0.5, 0.5, 0.05)),
    ]
}
