//! The growth-problem instance: dynamics data, objective data, and the five
//! scalar parameters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::production::ProductionFunction;
use crate::model::utility::UtilityFunction;

/// A finite-horizon optimal growth problem:
///
/// maximize `I(k, s) = integral of omega((1 - s(t)) phi(k(t))) e^{-lambda t} dt`
/// over `[t0, t_end]`, subject to `dk/dt = s(t) phi(k(t)) - sigma k(t)`,
/// `k(t0) = k0`, `s(t) in [0, 1]`, and `k(t) >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthProblem {
    /// Start of the planning interval (years), `>= 0`.
    pub t0: f64,
    /// End of the planning interval (years), `> t0`.
    pub t_end: f64,
    /// Time discount rate `lambda` (1/year), `>= 0`.
    pub discount_rate: f64,
    /// Labor growth rate `sigma` (1/year), `> 0`.
    pub labor_growth: f64,
    /// Initial capital-to-labor ratio `k0`, `>= 0`.
    pub k0: f64,
    /// Per-capita production function `phi`.
    pub production: ProductionFunction,
    /// Utility function `omega`.
    pub utility: UtilityFunction,
}

/// The four-way classification by linearity of production and utility. Only
/// power-family problems (`phi = A k^alpha`, `omega = c^beta`) get a named
/// class; everything else is `Other`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemClass {
    LinearLinear,
    LinearNonlinear,
    NonlinearLinear,
    NonlinearNonlinear,
    Other,
}

impl GrowthProblem {
    pub fn new(
        t0: f64,
        t_end: f64,
        discount_rate: f64,
        labor_growth: f64,
        k0: f64,
        production: ProductionFunction,
        utility: UtilityFunction,
    ) -> Result<Self> {
        if !(t0 >= 0.0 && t0.is_finite()) {
            return Err(Error::invalid("t0", format!("must be >= 0, got {t0}")));
        }
        if !(t_end > t0 && t_end.is_finite()) {
            return Err(Error::invalid(
                "t_end",
                format!("must exceed t0 = {t0}, got {t_end}"),
            ));
        }
        if !(discount_rate >= 0.0 && discount_rate.is_finite()) {
            return Err(Error::invalid(
                "discount_rate",
                format!("must be >= 0, got {discount_rate}"),
            ));
        }
        if !(labor_growth > 0.0 && labor_growth.is_finite()) {
            return Err(Error::invalid(
                "labor_growth",
                format!("must be > 0, got {labor_growth}"),
            ));
        }
        if !(k0 >= 0.0 && k0.is_finite()) {
            return Err(Error::invalid("k0", format!("must be >= 0, got {k0}")));
        }
        Ok(Self {
            t0,
            t_end,
            discount_rate,
            labor_growth,
            k0,
            production,
            utility,
        })
    }

    pub fn horizon(&self) -> f64 {
        self.t_end - self.t0
    }

    /// Classifies the problem within the power family; `Other` when either
    /// function falls outside it.
    pub fn classify(&self) -> ProblemClass {
        let beta = match self.utility.power_exponent() {
            Some(b) => b,
            None => return ProblemClass::Other,
        };
        let production_linear = match &self.production {
            ProductionFunction::Ak { .. } => true,
            ProductionFunction::CobbDouglas { .. } => false,
            _ => return ProblemClass::Other,
        };
        match (production_linear, beta >= 1.0) {
            (true, true) => ProblemClass::LinearLinear,
            (true, false) => ProblemClass::LinearNonlinear,
            (false, true) => ProblemClass::NonlinearLinear,
            (false, false) => ProblemClass::NonlinearNonlinear,
        }
    }
}
