//! Scenario configuration: a strict, versioned JSON schema.
//!
//! Unknown fields are rejected, the schema version is pinned, and every
//! model invariant is re-validated at load so that a misconfigured rate or
//! exponent fails with a field-level diagnostic instead of a solver surprise.

use serde::{Deserialize, Serialize};

use growth_core::model::{GrowthProblem, ProductionFunction, UtilityFunction};
use growth_core::regularity::DpResolution;

/// Supported schema version.
pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "snake_case")]
pub enum ProductionSpec {
    Ak {
        scale: f64,
    },
    CobbDouglas {
        scale: f64,
        exponent: f64,
    },
    PlateauPower {
        threshold: f64,
        base: f64,
        gain: f64,
        exponent: f64,
    },
    Tabulated {
        knots: Vec<f64>,
        values: Vec<f64>,
    },
}

impl ProductionSpec {
    pub fn build(&self) -> Result<ProductionFunction, String> {
        let built = match self {
            ProductionSpec::Ak { scale } => ProductionFunction::ak(*scale),
            ProductionSpec::CobbDouglas { scale, exponent } => {
                ProductionFunction::cobb_douglas(*scale, *exponent)
            }
            ProductionSpec::PlateauPower {
                threshold,
                base,
                gain,
                exponent,
            } => ProductionFunction::plateau_power(*threshold, *base, *gain, *exponent),
            ProductionSpec::Tabulated { knots, values } => {
                ProductionFunction::tabulated(knots.clone(), values.clone())
            }
        };
        built.map_err(|e| format!("problem.production: {e}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "snake_case")]
pub enum UtilitySpec {
    Power { exponent: f64 },
    Linear,
    Tabulated { knots: Vec<f64>, values: Vec<f64> },
}

impl UtilitySpec {
    pub fn build(&self) -> Result<UtilityFunction, String> {
        let built = match self {
            UtilitySpec::Power { exponent } => UtilityFunction::power(*exponent),
            UtilitySpec::Linear => Ok(UtilityFunction::Linear),
            UtilitySpec::Tabulated { knots, values } => {
                UtilityFunction::custom(knots.clone(), values.clone())
            }
        };
        built.map_err(|e| format!("problem.utility: {e}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub production: ProductionSpec,
    pub utility: UtilitySpec,
    pub t0: f64,
    pub t_end: f64,
    pub discount_rate: f64,
    pub labor_growth: f64,
    pub k0: f64,
}

impl ProblemSpec {
    pub fn build(&self) -> Result<GrowthProblem, String> {
        GrowthProblem::new(
            self.t0,
            self.t_end,
            self.discount_rate,
            self.labor_growth,
            self.k0,
            self.production.build()?,
            self.utility.build()?,
        )
        .map_err(|e| format!("problem: {e}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethodSpec {
    Dp,
    Direct,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    pub method: SolveMethodSpec,
    /// DP time steps.
    pub n_t: usize,
    /// DP state nodes.
    pub n_k: usize,
    /// DP control nodes.
    pub n_s: usize,
    /// Direct-method control intervals.
    pub n_intervals: usize,
    /// Direct-method iteration cap.
    pub max_iter: usize,
    /// Direct-method projected-gradient tolerance.
    pub tol: f64,
}

impl SolverSpec {
    fn validate(&self) -> Result<(), String> {
        if self.method != SolveMethodSpec::Direct && (self.n_t < 1 || self.n_k < 2 || self.n_s < 2)
        {
            return Err(format!(
                "solver: dp grid needs n_t >= 1, n_k >= 2, n_s >= 2 (got {}, {}, {})",
                self.n_t, self.n_k, self.n_s
            ));
        }
        if self.method != SolveMethodSpec::Dp {
            if self.n_intervals < 1 {
                return Err("solver.n_intervals: must be at least 1".into());
            }
            if !self.tol.is_finite() || self.tol <= 0.0 {
                return Err(format!("solver.tol: must be positive, got {}", self.tol));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegularitySpec {
    pub jump_threshold: f64,
    pub min_plateau: usize,
    /// Grid resolutions for the switch-count probe; empty disables it.
    #[serde(default)]
    pub resolutions: Vec<ResolutionSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionSpec {
    pub n_t: usize,
    pub n_k: usize,
    pub n_s: usize,
}

impl From<ResolutionSpec> for DpResolution {
    fn from(r: ResolutionSpec) -> Self {
        DpResolution {
            n_t: r.n_t,
            n_k: r.n_k,
            n_s: r.n_s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub trajectory_csv: String,
    pub report_json: String,
}

/// One scenario: the problem, how to solve it, how to analyze the solution,
/// and where to write the artifacts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub version: u32,
    pub problem: ProblemSpec,
    pub solver: SolverSpec,
    pub regularity: RegularitySpec,
    pub outputs: OutputSpec,
}

impl ScenarioConfig {
    /// Parses and fully validates a config, returning field-level
    /// diagnostics (serde errors carry line/column positions).
    pub fn from_json(text: &str) -> Result<Self, String> {
        let config: ScenarioConfig =
            serde_json::from_str(text).map_err(|e| format!("config parse error: {e}"))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.version != CONFIG_VERSION {
            return Err(format!(
                "version: expected {CONFIG_VERSION}, got {}",
                self.version
            ));
        }
        self.problem.build()?;
        self.solver.validate()?;
        if !(self.regularity.jump_threshold > 0.0 && self.regularity.jump_threshold < 1.0) {
            return Err(format!(
                "regularity.jump_threshold: must lie in (0, 1), got {}",
                self.regularity.jump_threshold
            ));
        }
        if self.regularity.min_plateau < 1 {
            return Err("regularity.min_plateau: must be at least 1".into());
        }
        if self.outputs.trajectory_csv.is_empty() || self.outputs.report_json.is_empty() {
            return Err("outputs: paths must be nonempty".into());
        }
        Ok(())
    }
}
