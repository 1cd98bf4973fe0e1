//! Library surface of the batch front end, exposed so integration tests can
//! drive scenarios without spawning processes.

pub mod config;
pub mod report;
pub mod runner;

pub use config::ScenarioConfig;
pub use report::RunReport;
pub use runner::{run_scenario, run_sweep, RunOptions, SweepAxis};
