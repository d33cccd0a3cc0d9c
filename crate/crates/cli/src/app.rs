//! Command-line interface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands;
use crate::config::{KernelFamily, KernelSpec, LambdaSpec, PhiFamily, PhiSpec, Scenario, WeightFamily, WeightSpec};
use crate::error::{CliError, CliResult};
use crate::presets::{run_preset, Preset};
use crate::run::run_scenario;
use crate::svg::{render_file, YScale};

#[derive(Debug, Parser)]
#[command(name = "breakage", version, about = "Collision-induced breakage: simulation and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a scenario file and write CSV artifacts.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a built-in sweep (fig5, fig6 or fig7).
    Preset {
        name: String,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Certify kinetic hypotheses.
    Validate {
        #[command(subcommand)]
        target: ValidateTarget,
    },
    /// Print the a priori constants for a scenario's initial state.
    Bounds {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        alpha1: Option<f64>,
        #[arg(long, default_value_t = 10)]
        imax: usize,
        #[arg(long, default_value_t = 100)]
        mmax: usize,
    },
    /// Plot CSV columns against the first column.
    RenderSvg {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, value_delimiter = ',')]
        cols: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        logy: bool,
    },
    /// Compare a scenario with a perturbed copy against the exponential envelope.
    Gronwall {
        #[arg(long)]
        config: PathBuf,
        /// `i:eps` adds `eps` to `ψ_i`.
        #[arg(long)]
        perturb: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PhiArg {
    Uniform,
    Powerlaw,
    Monomer,
    Exponential,
    Table,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KernelArg {
    Constant,
    Product,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WeightArg {
    Power,
    Logpower,
}

#[derive(Debug, Args)]
pub struct Range {
    #[arg(long, default_value_t = 100)]
    pub jmax: usize,
    #[arg(long, default_value_t = 100)]
    pub kmax: usize,
}

#[derive(Debug, Subcommand)]
pub enum ValidateTarget {
    Phi {
        family: PhiArg,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<f64>,
        #[arg(long)]
        path: Option<PathBuf>,
        #[arg(long)]
        alpha0: Option<f64>,
        #[arg(long)]
        alpha1: Option<f64>,
        #[command(flatten)]
        range: Range,
    },
    Kernel {
        family: KernelArg,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
        /// `power:<exponent>[:<scale>]`.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 40)]
        p: usize,
    },
    Weights {
        family: WeightArg,
        #[arg(long)]
        m: f64,
        #[arg(long, default_value_t = 1000)]
        grid: usize,
    },
}

fn validate(target: ValidateTarget) -> CliResult<String> {
    match target {
        ValidateTarget::Phi { family, nu, path, alpha0, alpha1, range } => {
            let family = match family {
                PhiArg::Uniform => PhiFamily::Uniform,
                PhiArg::Powerlaw => PhiFamily::Powerlaw,
                PhiArg::Monomer => PhiFamily::Monomer,
                PhiArg::Exponential => PhiFamily::Exponential,
                PhiArg::Table => PhiFamily::Table,
            };
            let alphas = match (alpha0, alpha1) {
                (Some(a), Some(b)) => Some((a, b)),
                (None, None) => None,
                _ => return Err(CliError::parse("give both --alpha0 and --alpha1 or neither")),
            };
            commands::validate_phi(&PhiSpec { family, nu, path }, alphas, range.jmax, range.kmax)?.into_result()
        }
        ValidateTarget::Kernel { family, alpha, c, lambda, p } => {
            let family = match family {
                KernelArg::Constant => KernelFamily::Constant,
                KernelArg::Product => KernelFamily::Product,
            };
            let lambda = lambda.as_deref().map(LambdaSpec::parse_flag).transpose()?;
            commands::validate_kernel_cmd(&KernelSpec { family, alpha, c }, lambda.as_ref(), p)?.into_result()
        }
        ValidateTarget::Weights { family, m, grid } => {
            let family = match family {
                WeightArg::Power => WeightFamily::Power,
                WeightArg::Logpower => WeightFamily::Logpower,
            };
            commands::validate_weights(&WeightSpec { family, m }, grid)?.into_result()
        }
    }
}

/// Executes a parsed command and returns the text to print on success.
pub fn execute(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Simulate { config, out } => {
            let (scenario, base) = Scenario::load(&config)?;
            let out = out.or_else(|| scenario.out.as_ref().map(|o| base.join(o))).unwrap_or_else(|| PathBuf::from("out"));
            let outcome = run_scenario(&scenario, &base, &out)?;
            let report = std::fs::read_to_string(out.join("report.txt")).unwrap_or_default();
            outcome.into_result().map_err(|mut e| {
                e.message = format!("{report}{}", e.message);
                e
            })?;
            Ok(report)
        }
        Command::Preset { name, out } => {
            let preset: Preset = name.parse()?;
            let outcome = run_preset(preset, &out)?;
            let summary = std::fs::read_to_string(out.join("summary.txt")).unwrap_or_default();
            outcome.into_result()?;
            Ok(summary)
        }
        Command::Validate { target } => validate(target),
        Command::Bounds { config, alpha1, imax, mmax } => {
            let (scenario, base) = Scenario::load(&config)?;
            commands::bounds(&scenario, &base, alpha1, imax, mmax)
        }
        Command::RenderSvg { csv, cols, out, logy } => {
            let cols: Vec<String> = cols.into_iter().filter(|c| !c.is_empty()).collect();
            render_file(&csv, &cols, &out, if logy { YScale::Log } else { YScale::Linear })?;
            Ok(format!("wrote {}\n", out.display()))
        }
        Command::Gronwall { config, perturb, out } => {
            let (scenario, base) = Scenario::load(&config)?;
            commands::gronwall(&scenario, &base, commands::parse_perturbation(&perturb)?, out.as_deref())
        }
    }
}
