//! `growth` — batch front end for the finite-horizon optimal growth toolkit.
//!
//! Exit codes: 0 success; 2 configuration or output-path error; 3 solver
//! error; 4 no existence conclusion and `--force` absent.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use growth_cli::config::ScenarioConfig;
use growth_cli::runner::{
    self, run_scenario, run_sweep, sweep_exit_code, RunOptions, SweepAxis,
};

#[derive(Parser)]
#[command(
    name = "growth",
    about = "Solve finite-horizon optimal growth scenarios and analyze saving policies",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Solve even when no existence conclusion was established.
    #[arg(long)]
    force: bool,
    /// Seed for the condition-sampling plans.
    #[arg(long, default_value_t = growth_core::conditions::sampling::DEFAULT_SEED)]
    seed: u64,
    /// Maximum concurrent scenario runs (sweeps only).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario config: condition report, solve, regularity, outputs.
    Run {
        /// Path to the scenario config JSON.
        config: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a scenario once per value of one parameter axis.
    Sweep {
        /// Path to the base scenario config JSON.
        config: PathBuf,
        /// Parameter to vary: A, alpha, beta, sigma, lambda, k0, or T.
        #[arg(long)]
        axis: String,
        /// Comma-separated list of axis values.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
        /// Directory for per-value outputs and the summary CSV.
        #[arg(long, default_value = "sweep_out")]
        out_dir: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn load_config(path: &Path) -> Result<ScenarioConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    ScenarioConfig::from_json(&text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run { config, common } => {
            let opts = RunOptions {
                force: common.force,
                seed: common.seed,
            };
            match load_config(&config) {
                Err(message) => {
                    eprintln!("error: {message}");
                    runner::EXIT_CONFIG
                }
                Ok(scenario) => match run_scenario(&scenario, Path::new(""), &opts) {
                    Ok(report) => {
                        println!(
                            "class {:?}; existence {:?}; wrote {} and {}",
                            report.conditions.class,
                            report.conditions.existence,
                            scenario.outputs.trajectory_csv,
                            scenario.outputs.report_json
                        );
                        runner::EXIT_OK
                    }
                    Err(e) => {
                        eprintln!("error: {}", e.message);
                        e.exit_code
                    }
                },
            }
        }
        Command::Sweep {
            config,
            axis,
            values,
            out_dir,
            common,
        } => {
            let opts = RunOptions {
                force: common.force,
                seed: common.seed,
            };
            let outcome = load_config(&config).and_then(|scenario| {
                let axis = SweepAxis::parse(&axis)?;
                run_sweep(
                    &scenario,
                    Path::new(""),
                    axis,
                    &values,
                    &out_dir,
                    common.jobs,
                    &opts,
                )
                .map_err(|e| e.message)
            });
            match outcome {
                Err(message) => {
                    eprintln!("error: {message}");
                    runner::EXIT_CONFIG
                }
                Ok(rows) => {
                    for row in &rows {
                        println!("value {}: {}", row.value, row.status);
                    }
                    let code = sweep_exit_code(&rows);
                    if code != runner::EXIT_OK {
                        eprintln!("error: {} of {} sweep values failed",
                            rows.iter().filter(|r| r.exit_code != 0).count(),
                            rows.len());
                    }
                    code
                }
            }
        }
    };
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}
