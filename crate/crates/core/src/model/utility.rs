//! Utility functions mapping per-capita consumption to welfare.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::production::TabulatedFn;

/// Consumption floor applied inside marginal-utility evaluations only.
/// The power family has unbounded one-sided derivative at 0; values are
/// never floored, so objective values stay unbiased.
pub const MARGINAL_CONSUMPTION_FLOOR: f64 = 1e-12;

/// Utility of per-capita consumption, `omega(c)`, defined and finite for all
/// `c >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UtilityFunction {
    /// `omega(c) = c^beta` with `beta` in (0, 1]; strictly increasing and
    /// concave, with `omega(0) = 0`.
    Power { exponent: f64 },
    /// `omega(c) = c`, the `beta = 1` special case kept as its own variant.
    Linear,
    /// Tabulated continuous utility (linear interpolation/extrapolation).
    /// May be nonconcave; the condition checkers probe it by sampling.
    Custom(TabulatedFn),
}

impl UtilityFunction {
    pub fn power(exponent: f64) -> Result<Self> {
        if !(exponent > 0.0 && exponent <= 1.0) {
            return Err(Error::invalid(
                "utility exponent",
                format!("must lie in (0, 1], got {exponent}"),
            ));
        }
        Ok(UtilityFunction::Power { exponent })
    }

    pub fn custom(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Ok(UtilityFunction::Custom(TabulatedFn::new(knots, values)?))
    }

    /// Welfare at consumption `c >= 0`.
    pub fn eval(&self, c: f64) -> f64 {
        debug_assert!(c >= 0.0, "utility evaluated at negative c = {c}");
        match self {
            UtilityFunction::Power { exponent } => c.powf(*exponent),
            UtilityFunction::Linear => c,
            UtilityFunction::Custom(t) => t.eval(c),
        }
    }

    /// Marginal utility, with consumption floored at
    /// [`MARGINAL_CONSUMPTION_FLOOR`] to keep the power-family derivative
    /// finite at 0.
    pub fn marginal(&self, c: f64) -> f64 {
        match self {
            UtilityFunction::Power { exponent } => {
                exponent * c.max(MARGINAL_CONSUMPTION_FLOOR).powf(exponent - 1.0)
            }
            UtilityFunction::Linear => 1.0,
            UtilityFunction::Custom(t) => t.slope_at(c),
        }
    }

    /// The power exponent when this utility belongs to the power family
    /// (`Linear` counts as exponent 1).
    pub fn power_exponent(&self) -> Option<f64> {
        match self {
            UtilityFunction::Power { exponent } => Some(*exponent),
            UtilityFunction::Linear => Some(1.0),
            UtilityFunction::Custom(_) => None,
        }
    }
}
