use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use breakage::analysis::{default_slack, G0BoundMonitor, MassDriftMonitor, NumberGrowthMonitor, TailMonitor};
use breakage::integrator::{integrate, Monitor, MonitorVerdict, StopReason, Trajectory};
use breakage::system::weighted;

use crate::config::{Built, MonitorKind, Scenario};
use crate::error::{CliError, CliResult, Failure};
use crate::output::{ensure_dir, write_text, Table};

/// Relative mass drift tolerated over a run.
pub const MASS_DRIFT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub trajectory: Trajectory<f64>,
    pub verdicts: Vec<MonitorVerdict>,
    pub out_dir: PathBuf,
}

impl RunOutcome {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    /// Exit-status view: monitor failures become [`Failure::Monitor`].
    pub fn into_result(self) -> CliResult<Self> {
        if self.passed() {
            Ok(self)
        } else {
            let failed: Vec<&str> = self.verdicts.iter().filter(|v| !v.passed).map(|v| v.name.as_str()).collect();
            Err(CliError::new(Failure::Monitor, format!("monitor failure: {}", failed.join(", "))))
        }
    }
}

fn monitors(scenario: &Scenario, built: &Built) -> Vec<Box<dyn Monitor<f64>>> {
    let m1 = built.initial.mass();
    let slack = default_slack(built.icfg.newton_tol, m1);
    let j0 = weighted(built.initial.as_slice(), |i| built.weights.g0(i as f64));
    let tails: Vec<usize> = scenario.tails.iter().copied().filter(|&r| r >= 1 && r <= scenario.p).collect();
    scenario
        .monitors
        .iter()
        .map(|kind| -> Box<dyn Monitor<f64>> {
            match kind {
                MonitorKind::MassDrift => Box::new(MassDriftMonitor::new(MASS_DRIFT_TOLERANCE)),
                MonitorKind::NumberGrowth => Box::new(NumberGrowthMonitor::new(slack)),
                MonitorKind::Tail => Box::new(TailMonitor::new(built.lambda.clone(), tails.clone(), slack)),
                MonitorKind::G0Bound => Box::new(G0BoundMonitor::new(
                    built.weights,
                    default_slack(built.icfg.newton_tol, j0),
                )),
            }
        })
        .collect()
}

pub fn states_table(traj: &Trajectory<f64>) -> Table {
    let p = traj.initial().state.dim();
    let mut header = vec!["t".to_string()];
    header.extend((1..=p).map(|i| format!("psi_{i}")));
    let mut table = Table::new(header);
    for s in &traj.samples {
        let mut row = vec![s.t];
        row.extend_from_slice(s.state.as_slice());
        table.push_row(&row);
    }
    table
}

pub fn moments_table(traj: &Trajectory<f64>, built: &Built) -> Table {
    let header = ["t", "m0", "m1", "g0moment", "lambda_moment"].map(String::from).to_vec();
    let mut table = Table::new(header);
    for s in &traj.samples {
        let psi = s.state.as_slice();
        let g0 = weighted(psi, |i| built.weights.g0(i as f64));
        let lm = weighted(psi, |i| built.lambda.get(i));
        table.push_row(&[s.t, s.diagnostics.m0, s.diagnostics.m1, g0, lm]);
    }
    table
}

fn diagnostics_table(traj: &Trajectory<f64>) -> Table {
    let mut table = Table::new(["t", "newton_iterations", "newton_residual"].map(String::from).to_vec());
    for s in &traj.samples {
        table.push_row(&[s.t, s.diagnostics.newton_iterations as f64, s.diagnostics.newton_residual]);
    }
    table
}

fn report(scenario: &Scenario, traj: &Trajectory<f64>, verdicts: &[MonitorVerdict]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "scenario: {}", scenario.name);
    let _ = writeln!(s, "p = {}, dt = {}, t_end = {}", scenario.p, scenario.dt, scenario.t_end);
    let _ = writeln!(s, "kernel: {}, phi: {}", scenario.kernel.label(), scenario.phi.label());
    let stop = match traj.stop {
        StopReason::ReachedEnd => "reached t_end",
        StopReason::SteadyState => "steady state",
    };
    let _ = writeln!(s, "stop: {stop} at t = {} ({} samples)", traj.last().t, traj.len());
    for v in verdicts {
        let _ = writeln!(s, "{} {}: {}", if v.passed { "PASS" } else { "FAIL" }, v.name, v.detail);
    }
    let all = verdicts.iter().all(|v| v.passed);
    let _ = writeln!(s, "result: {}", if all { "PASS" } else { "FAIL" });
    s
}

/// Integrates one scenario and writes `states.csv`, `moments.csv`,
/// `diagnostics.csv` and `report.txt` into `out_dir`.
pub fn run_scenario(scenario: &Scenario, base: &Path, out_dir: &Path) -> CliResult<RunOutcome> {
    let built = scenario.build(base)?;
    let mut boxed = monitors(scenario, &built);
    let mut refs: Vec<&mut dyn Monitor<f64>> = boxed.iter_mut().map(|m| m.as_mut() as &mut dyn Monitor<f64>).collect();
    let trajectory = integrate(&built.initial, &built.system, &built.icfg, &mut refs)
        .map_err(|e| CliError::new(Failure::Integration, e.to_string()))?;
    let verdicts: Vec<MonitorVerdict> = boxed.iter().map(|m| m.verdict()).collect();

    ensure_dir(out_dir)?;
    states_table(&trajectory).write(&out_dir.join("states.csv"))?;
    moments_table(&trajectory, &built).write(&out_dir.join("moments.csv"))?;
    diagnostics_table(&trajectory).write(&out_dir.join("diagnostics.csv"))?;
    write_text(&out_dir.join("report.txt"), &report(scenario, &trajectory, &verdicts))?;
    Ok(RunOutcome { trajectory, verdicts, out_dir: out_dir.to_path_buf() })
}
