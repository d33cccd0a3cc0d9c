//! Built-in scenario sweeps.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::config::{KernelSpec, PhiFamily, PhiSpec, Scenario};
use crate::error::{CliError, CliResult, Failure};
use crate::output::{ensure_dir, write_text, Table};
use crate::run::{run_scenario, RunOutcome};
use crate::svg::{render, YScale};

/// Caps the worker pool of preset sweeps.
pub const THREADS_ENV: &str = "BREAKAGE_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `Γ = (ij)²`, each catalog φ, until steady state (`t_end = 50`).
    Fig5,
    /// `Γ = (ij)^α` for `α = 0..=4`, each catalog φ, `t_end = 10`.
    Fig6,
    /// `Γ ∈ {1, ij, (ij)²}` against each catalog φ, `t_end = 10`.
    Fig7,
}

impl std::str::FromStr for Preset {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "fig5" => Ok(Preset::Fig5),
            "fig6" => Ok(Preset::Fig6),
            "fig7" => Ok(Preset::Fig7),
            _ => Err(CliError::parse(format!("unknown preset {s:?} (expected fig5, fig6 or fig7)"))),
        }
    }
}

const PHIS: [PhiFamily; 3] = [PhiFamily::Uniform, PhiFamily::Monomer, PhiFamily::Exponential];

fn base(name: String, alpha: f64, phi: PhiFamily, t_end: f64) -> Scenario {
    let mut s = Scenario::from_toml(&format!(
        "name = {name:?}\np = 40\ndt = 0.01\nt_end = {t_end:?}\n[kernel]\nfamily = \"product\"\nalpha = {alpha:?}\n[phi]\nfamily = \"uniform\"\n"
    ))
    .expect("preset scenarios parse");
    s.kernel = KernelSpec::product(alpha);
    s.phi = PhiSpec::of(phi);
    s
}

/// Member scenarios, each paired with its output subdirectory.
pub fn scenarios(preset: Preset) -> Vec<(PathBuf, Scenario)> {
    let mut out = Vec::new();
    match preset {
        Preset::Fig5 => {
            for phi in PHIS {
                let label = PhiSpec::of(phi).label();
                out.push((PathBuf::from(&label), base(format!("fig5-{label}"), 2.0, phi, 50.0)));
            }
        }
        Preset::Fig6 | Preset::Fig7 => {
            let alphas: &[f64] = if preset == Preset::Fig6 { &[0.0, 1.0, 2.0, 3.0, 4.0] } else { &[0.0, 1.0, 2.0] };
            let tag = if preset == Preset::Fig6 { "fig6" } else { "fig7" };
            for phi in PHIS {
                for &alpha in alphas {
                    let mut s = base(String::new(), alpha, phi, 10.0);
                    // A shared time grid lets the m0 curves be overlaid column by column.
                    s.integrator.steady_tol = 0.0;
                    let dir = format!("{}_{}", s.phi.label(), s.kernel.label());
                    s.name = format!("{tag}-{dir}");
                    out.push((PathBuf::from(dir), s));
                }
            }
        }
    }
    out
}

fn pool() -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().map_err(|_| CliError::parse(format!("{THREADS_ENV}={v:?} is not a thread count")))?;
        builder = builder.num_threads(n.max(1));
    }
    builder.build().map_err(|e| CliError::io("thread pool", e))
}

#[derive(Debug)]
pub struct PresetOutcome {
    pub runs: Vec<(Scenario, RunOutcome)>,
    pub out_dir: PathBuf,
}

impl PresetOutcome {
    pub fn passed(&self) -> bool {
        self.runs.iter().all(|(_, r)| r.passed())
    }
}

fn m0_overlay(runs: &[(Scenario, RunOutcome)], pick: impl Fn(&Scenario) -> bool, label: impl Fn(&Scenario) -> String) -> Table {
    let chosen: Vec<&(Scenario, RunOutcome)> = runs.iter().filter(|(s, _)| pick(s)).collect();
    let mut header = vec!["t".to_string()];
    header.extend(chosen.iter().map(|(s, _)| label(s)));
    let mut table = Table::new(header);
    let n = chosen.iter().map(|(_, r)| r.trajectory.len()).min().unwrap_or(0);
    for k in 0..n {
        let mut row = vec![chosen[0].1.trajectory.samples[k].t];
        row.extend(chosen.iter().map(|(_, r)| r.trajectory.samples[k].diagnostics.m0));
        table.push_row(&row);
    }
    table
}

fn write_overlay(out: &Path, stem: &str, table: &Table) -> CliResult<()> {
    table.write(&out.join(format!("{stem}.csv")))?;
    let cols: Vec<String> = table.header[1..].to_vec();
    write_text(&out.join(format!("{stem}.svg")), &render(table, &cols, YScale::Linear)?)
}

/// Runs every member scenario (in parallel, results in a fixed order),
/// then writes the combined CSV/SVG artifacts and `summary.txt`.
pub fn run_preset(preset: Preset, out: &Path) -> CliResult<PresetOutcome> {
    ensure_dir(out)?;
    let members = scenarios(preset);
    let results: Vec<CliResult<(Scenario, RunOutcome)>> = pool()?.install(|| {
        members
            .into_par_iter()
            .map(|(dir, s)| run_scenario(&s, Path::new("."), &out.join(dir)).map(|r| (s, r)))
            .collect()
    });
    let runs = results.into_iter().collect::<CliResult<Vec<_>>>()?;

    match preset {
        Preset::Fig5 => {
            let cols: Vec<String> = (1..=5).map(|i| format!("psi_{i}")).collect();
            for (_, r) in &runs {
                let table = crate::run::states_table(&r.trajectory);
                write_text(&r.out_dir.join("psi_1_5.svg"), &render(&table, &cols, YScale::Linear)?)?;
            }
        }
        Preset::Fig6 => {
            for phi in PHIS {
                let table = m0_overlay(&runs, |s| s.phi.family == phi, |s| s.kernel.label());
                write_overlay(out, &format!("m0_{}", PhiSpec::of(phi).label()), &table)?;
            }
        }
        Preset::Fig7 => {
            for alpha in [0.0, 1.0, 2.0] {
                let k = KernelSpec::product(alpha);
                let table = m0_overlay(&runs, |s| s.kernel == k, |s| s.phi.label());
                write_overlay(out, &format!("m0_{}", k.label()), &table)?;
            }
        }
    }

    let mut summary = String::new();
    for (s, r) in &runs {
        let _ = writeln!(summary, "{} {}", if r.passed() { "PASS" } else { "FAIL" }, s.name);
    }
    write_text(&out.join("summary.txt"), &summary)?;
    Ok(PresetOutcome { runs, out_dir: out.to_path_buf() })
}

impl PresetOutcome {
    pub fn into_result(self) -> CliResult<Self> {
        if self.passed() {
            Ok(self)
        } else {
            let failed: Vec<&str> = self.runs.iter().filter(|(_, r)| !r.passed()).map(|(s, _)| s.name.as_str()).collect();
            Err(CliError::new(Failure::Monitor, format!("monitor failure in {}", failed.join(", "))))
        }
    }
}
