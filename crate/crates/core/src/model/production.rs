//! Per-capita production functions and their two-factor parents.
//!
//! A production function `F(K, L)` with constant returns to scale is fully
//! determined by its per-capita reduction `phi(k) = F(k, 1)` through
//! `F(K, L) = L * phi(K / L)`. All model code works with `phi`; the
//! [`TwoFactorProduction`] wrapper recovers `F` for the checks that operate
//! on the two-argument form directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A tabulated nonnegative function on the half-line: linear interpolation
/// between knots, linear extrapolation beyond the last knot with the last
/// segment's slope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabulatedFn {
    knots: Vec<f64>,
    values: Vec<f64>,
}

impl TabulatedFn {
    /// Builds a table after validating that it defines a continuous,
    /// nonnegative function on all of the half-line: knots start at 0 and
    /// ascend strictly, values are finite and nonnegative, and the
    /// extrapolation slope beyond the last knot is nonnegative.
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::invalid("tabulated function", "need at least 2 knots"));
        }
        if knots.len() != values.len() {
            return Err(Error::invalid(
                "tabulated function",
                format!("{} knots vs {} values", knots.len(), values.len()),
            ));
        }
        if knots[0] != 0.0 {
            return Err(Error::invalid(
                "tabulated function",
                format!("first knot must be 0, got {}", knots[0]),
            ));
        }
        if knots.iter().any(|k| !k.is_finite()) {
            return Err(Error::invalid("tabulated function", "non-finite knot"));
        }
        for w in knots.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::invalid(
                    "tabulated function",
                    format!("knots must ascend strictly: {} then {}", w[0], w[1]),
                ));
            }
        }
        for &v in &values {
            if !v.is_finite() {
                return Err(Error::invalid("tabulated function", "non-finite value"));
            }
        }
        Ok(Self { knots, values })
    }

    /// Variant of [`TabulatedFn::new`] that additionally requires values to be
    /// nonnegative everywhere, including the extrapolated tail.
    pub fn new_nonnegative(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let t = Self::new(knots, values)?;
        for &v in &t.values {
            if v < 0.0 {
                return Err(Error::invalid("tabulated function", format!("negative value {v}")));
            }
        }
        if t.tail_slope() < 0.0 {
            return Err(Error::invalid(
                "tabulated function",
                "extrapolation slope beyond the last knot is negative, so the \
                 function would eventually turn negative",
            ));
        }
        Ok(t)
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Slope of the last segment, used for extrapolation beyond the table.
    pub fn tail_slope(&self) -> f64 {
        let n = self.knots.len();
        (self.values[n - 1] - self.values[n - 2]) / (self.knots[n - 1] - self.knots[n - 2])
    }

    /// Index of the segment containing `x` (clamped to the last segment for
    /// extrapolation).
    fn segment(&self, x: f64) -> usize {
        match self.knots.binary_search_by(|k| k.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.knots.len() - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(self.knots.len() - 2),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = self.segment(x);
        let slope = (self.values[i + 1] - self.values[i]) / (self.knots[i + 1] - self.knots[i]);
        self.values[i] + slope * (x - self.knots[i])
    }

    /// One-sided slope at `x`: the slope of the containing segment, taking the
    /// right segment at an interior knot.
    pub fn slope_at(&self, x: f64) -> f64 {
        let mut i = self.segment(x);
        if x >= self.knots[i + 1] && i + 2 < self.knots.len() {
            i += 1;
        }
        (self.values[i + 1] - self.values[i]) / (self.knots[i + 1] - self.knots[i])
    }
}

/// Per-capita production `phi`, mapping the capital-to-labor ratio to output
/// per worker. All variants are continuous and nonnegative on the half-line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProductionFunction {
    /// Linear production `phi(k) = A k` (no diminishing returns to capital).
    Ak { scale: f64 },
    /// Power production `phi(k) = A k^alpha` with `alpha` in (0, 1)
    /// (diminishing returns to capital).
    CobbDouglas { scale: f64, exponent: f64 },
    /// Flat plateau followed by a power ramp:
    /// `phi(k) = base` on `[0, threshold]` and
    /// `phi(k) = gain * (k - threshold)^exponent + base` beyond. Continuous,
    /// nonconcave (the kink at `threshold` turns slope 0 into a positive
    /// slope), but still of at most linear growth for `exponent <= 1`.
    PlateauPower {
        threshold: f64,
        base: f64,
        gain: f64,
        exponent: f64,
    },
    /// Piecewise-linear table with linear extrapolation.
    Tabulated(TabulatedFn),
}

impl ProductionFunction {
    pub fn ak(scale: f64) -> Result<Self> {
        if !scale.is_finite() || scale <= 0.0 {
            return Err(Error::invalid("production scale", format!("must be > 0, got {scale}")));
        }
        Ok(ProductionFunction::Ak { scale })
    }

    pub fn cobb_douglas(scale: f64, exponent: f64) -> Result<Self> {
        if !scale.is_finite() || scale <= 0.0 {
            return Err(Error::invalid("production scale", format!("must be > 0, got {scale}")));
        }
        if !(exponent > 0.0 && exponent < 1.0) {
            return Err(Error::invalid(
                "production exponent",
                format!("must lie in (0, 1), got {exponent}"),
            ));
        }
        Ok(ProductionFunction::CobbDouglas { scale, exponent })
    }

    pub fn plateau_power(threshold: f64, base: f64, gain: f64, exponent: f64) -> Result<Self> {
        if !(threshold > 0.0 && threshold.is_finite()) {
            return Err(Error::invalid("plateau threshold", format!("must be > 0, got {threshold}")));
        }
        if !(base >= 0.0 && base.is_finite()) {
            return Err(Error::invalid("plateau base", format!("must be >= 0, got {base}")));
        }
        if !(gain > 0.0 && gain.is_finite()) {
            return Err(Error::invalid("plateau gain", format!("must be > 0, got {gain}")));
        }
        if !(exponent > 0.0 && exponent <= 1.0) {
            return Err(Error::invalid(
                "plateau exponent",
                format!("must lie in (0, 1], got {exponent}"),
            ));
        }
        Ok(ProductionFunction::PlateauPower {
            threshold,
            base,
            gain,
            exponent,
        })
    }

    pub fn tabulated(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Ok(ProductionFunction::Tabulated(TabulatedFn::new_nonnegative(knots, values)?))
    }

    /// Output per worker at capital ratio `k >= 0`.
    pub fn eval(&self, k: f64) -> f64 {
        debug_assert!(k >= 0.0, "production evaluated at negative k = {k}");
        match self {
            ProductionFunction::Ak { scale } => scale * k,
            ProductionFunction::CobbDouglas { scale, exponent } => scale * k.powf(*exponent),
            ProductionFunction::PlateauPower {
                threshold,
                base,
                gain,
                exponent,
            } => {
                if k <= *threshold {
                    *base
                } else {
                    gain * (k - threshold).powf(*exponent) + base
                }
            }
            ProductionFunction::Tabulated(t) => t.eval(k).max(0.0),
        }
    }

    /// Marginal product of capital. For the power variants the derivative is
    /// unbounded as `k` approaches 0 (and the plateau kink), so evaluation
    /// points are floored at `1e-12` away from the singular point; this floor
    /// is used only inside gradient computations, never for values.
    pub fn derivative(&self, k: f64) -> f64 {
        const FLOOR: f64 = 1e-12;
        match self {
            ProductionFunction::Ak { scale } => *scale,
            ProductionFunction::CobbDouglas { scale, exponent } => {
                scale * exponent * k.max(FLOOR).powf(exponent - 1.0)
            }
            ProductionFunction::PlateauPower {
                threshold,
                base: _,
                gain,
                exponent,
            } => {
                if k <= *threshold {
                    0.0
                } else {
                    gain * exponent * (k - threshold).max(FLOOR).powf(exponent - 1.0)
                }
            }
            ProductionFunction::Tabulated(t) => t.slope_at(k),
        }
    }
}

/// Two-factor production `F(K, L) = L * phi(K / L)`, the constant-returns
/// parent of a per-capita function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoFactorProduction {
    pub base: ProductionFunction,
}

impl TwoFactorProduction {
    pub fn new(base: ProductionFunction) -> Self {
        Self { base }
    }

    /// `F(K, L)` for `K >= 0`, `L > 0`.
    pub fn eval(&self, capital: f64, labor: f64) -> f64 {
        debug_assert!(labor > 0.0, "two-factor production needs L > 0, got {labor}");
        labor * self.base.eval(capital / labor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ak_is_linear() {
        let phi = ProductionFunction::ak(2.0).unwrap();
        assert_eq!(phi.eval(0.0), 0.0);
        assert_eq!(phi.eval(3.0), 6.0);
        assert_eq!(phi.derivative(1.0), 2.0);
    }

    #[test]
    fn cobb_douglas_basics() {
        let phi = ProductionFunction::cobb_douglas(1.0, 0.5).unwrap();
        assert_eq!(phi.eval(0.0), 0.0);
        assert_eq!(phi.eval(4.0), 2.0);
        assert!((phi.derivative(4.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn cobb_douglas_rejects_bad_exponent() {
        assert!(ProductionFunction::cobb_douglas(1.0, 0.0).is_err());
        assert!(ProductionFunction::cobb_douglas(1.0, 1.0).is_err());
        assert!(ProductionFunction::cobb_douglas(1.0, 1.5).is_err());
        assert!(ProductionFunction::cobb_douglas(-1.0, 0.5).is_err());
    }

    #[test]
    fn plateau_power_is_flat_then_ramps() {
        let phi = ProductionFunction::plateau_power(1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(phi.eval(0.0), 1.0);
        assert_eq!(phi.eval(1.0), 1.0);
        assert_eq!(phi.eval(3.0), 3.0);
    }

    #[test]
    fn tabulated_interpolates_and_extrapolates() {
        let phi = ProductionFunction::tabulated(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 4.0]).unwrap();
        assert_eq!(phi.eval(0.5), 0.5);
        assert_eq!(phi.eval(1.5), 2.5);
        // beyond the last knot: slope 3 continues
        assert_eq!(phi.eval(3.0), 7.0);
    }

    #[test]
    fn tabulated_rejects_negative_tail() {
        // last segment slopes downward, so the extrapolation would cross 0
        assert!(ProductionFunction::tabulated(vec![0.0, 1.0, 2.0], vec![0.0, 2.0, 1.0]).is_err());
        assert!(ProductionFunction::tabulated(vec![0.5, 1.0], vec![0.0, 1.0]).is_err());
        assert!(ProductionFunction::tabulated(vec![0.0, 0.0], vec![0.0, 1.0]).is_err());
    }

    #[test]
    fn two_factor_recovers_per_capita() {
        let f = TwoFactorProduction::new(ProductionFunction::cobb_douglas(2.0, 0.3).unwrap());
        for &k in &[0.0, 0.5, 1.0, 7.0] {
            assert_eq!(f.eval(k, 1.0), f.base.eval(k));
        }
    }
}
