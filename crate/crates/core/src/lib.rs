//! Finite-horizon optimal economic growth: model construction, executable
//! checks of the solution-existence conditions, two independent numerical
//! solvers, and a regularity analyzer for the structure of optimal saving
//! policies.
//!
//! The problem: choose a saving fraction `s(t) in [0, 1]` on `[t0, T]` to
//! maximize the discounted utility of consumption
//!
//! ```text
//! I(k, s) = ∫ omega((1 - s(t)) phi(k(t))) e^{-lambda t} dt
//! ```
//!
//! subject to the capital dynamics `dk/dt = s phi(k) - sigma k`, the initial
//! state `k(t0) = k0`, and the state constraint `k(t) >= 0`.
//!
//! The crate is organized around four concerns:
//!
//! * [`model`] — problem data ([`GrowthProblem`]), production and utility
//!   functions, policies and trajectories, and the elementary operations
//!   (dynamics, utility flow, analytic baseline, a-priori state bound).
//! * [`conditions`] — executable verification of the hypotheses under which
//!   a globally optimal process exists: the linear growth bound on `phi`,
//!   its equivalent asymptotic-ratio form, concavity of `phi` and of the
//!   two-factor `F`, and convexity of the attainable (cost, velocity) set.
//! * [`solver`] — a semi-Lagrangian dynamic-programming oracle and a direct
//!   adjoint-gradient ascent on piecewise-constant controls, sharing one
//!   fixed-step integrator.
//! * [`regularity`] — switch-structure detection on solved policies and
//!   numeric probes of how many control discontinuities optimal policies
//!   exhibit.

pub mod conditions;
pub mod error;
pub mod model;
pub mod regularity;
pub mod solver;

pub use error::{Error, Result};
pub use model::{
    GrowthProblem, Policy, ProblemClass, ProductionFunction, TabulatedFn, Trajectory,
    TwoFactorProduction, UtilityFunction,
};
