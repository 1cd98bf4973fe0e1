//! Machine-readable outputs: the run report JSON and the trajectory CSV.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use growth_core::conditions::ConditionReport;
use growth_core::model::Trajectory;
use growth_core::regularity::{ConjectureProbe, RegularityReport};
use growth_core::solver::SolveReport;

use crate::config::ScenarioConfig;

/// Everything one scenario run produced, serialized as the report JSON.
/// Parsing the file back reproduces this structure field for field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: u32,
    pub scenario: ScenarioConfig,
    pub conditions: ConditionReport,
    /// Whether solving was gated off (existence not established, no force).
    pub solved: bool,
    pub forced: bool,
    pub dp: Option<SolveReport>,
    pub direct: Option<SolveReport>,
    /// Switch structure of the best policy found.
    pub regularity: Option<RegularityReport>,
    /// Switch-count probe across grid resolutions (power family only).
    pub conjecture_probe: Option<ConjectureProbe>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("report parse error: {e}"))
    }
}

/// Formats a float with 12 significant digits.
fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Renders a trajectory as CSV: one row per grid node with the control in
/// force just after the node (the final node repeats the last control), the
/// discounted utility flow at that node, and the running objective. The last
/// cumulative value reproduces the trajectory objective exactly.
pub fn trajectory_csv(problem: &growth_core::GrowthProblem, trajectory: &Trajectory) -> String {
    let mut out = String::with_capacity(trajectory.grid.len() * 80);
    out.push_str("t,k,s,integrand,cumulative_objective\n");
    let n = trajectory.grid.len();
    for i in 0..n {
        let s = if i < trajectory.s.len() {
            trajectory.s[i]
        } else {
            *trajectory.s.last().expect("trajectory has at least one interval")
        };
        let t = trajectory.grid[i];
        let k = trajectory.k[i];
        let integrand = problem
            .utility_flow(t, k, s)
            .expect("trajectory nodes are feasible");
        writeln!(
            out,
            "{},{},{},{},{}",
            sig12(t),
            sig12(k),
            sig12(s),
            sig12(integrand),
            sig12(trajectory.cumulative[i]),
        )
        .expect("string write");
    }
    out
}

/// Writes text to a path, creating parent directories, with the path
/// reported on failure.
pub fn write_with_context(path: &Path, text: &str) -> Result<(), String> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| format!("cannot create directory {}: {e}", parent.display()))?;
        }
    }
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}
