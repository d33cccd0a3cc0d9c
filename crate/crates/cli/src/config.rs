//! Scenario files: TOML with one table per kinetic ingredient.

use std::fs;
use std::path::{Path, PathBuf};

use breakage::integrator::{IntegratorConfig, Scheme};
use breakage::kinetics::{
    power_law_constants, CollisionKernel, FragmentDistribution, FragmentTable, WeightFunction, WeightSequence,
};
use breakage::system::{StateVector, System, SystemConfig};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default = "default_name")]
    pub name: String,
    pub p: usize,
    pub dt: f64,
    pub t_end: f64,
    pub kernel: KernelSpec,
    pub phi: PhiSpec,
    #[serde(default)]
    pub initial: InitialSpec,
    #[serde(default)]
    pub weights: WeightSpec,
    #[serde(default)]
    pub lambda: LambdaSpec,
    #[serde(default)]
    pub integrator: IntegratorSpec,
    #[serde(default = "default_monitors")]
    pub monitors: Vec<MonitorKind>,
    /// Tail indices watched by the tail monitor; indices above `p` are dropped.
    #[serde(default = "default_tails")]
    pub tails: Vec<usize>,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

fn default_name() -> String {
    "scenario".into()
}

fn default_monitors() -> Vec<MonitorKind> {
    vec![MonitorKind::MassDrift, MonitorKind::NumberGrowth, MonitorKind::Tail, MonitorKind::G0Bound]
}

fn default_tails() -> Vec<usize> {
    vec![1, 2, 3, 5, 10, 20]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonitorKind {
    MassDrift,
    NumberGrowth,
    Tail,
    G0Bound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
pub enum KernelFamily {
    Constant,
    Product,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelSpec {
    pub family: KernelFamily,
    /// Exponent of `(ij)^α`.
    #[serde(default)]
    pub alpha: Option<f64>,
    /// Value of the constant kernel.
    #[serde(default)]
    pub c: Option<f64>,
}

impl KernelSpec {
    pub fn product(alpha: f64) -> Self {
        Self { family: KernelFamily::Product, alpha: Some(alpha), c: None }
    }

    pub fn build(&self) -> CliResult<CollisionKernel<f64>> {
        Ok(match self.family {
            KernelFamily::Constant => CollisionKernel::constant(self.c.unwrap_or(1.0))?,
            KernelFamily::Product => {
                let alpha = self.alpha.ok_or_else(|| CliError::parse("kernel.alpha is required for family = \"product\""))?;
                CollisionKernel::product_power(alpha)?
            }
        })
    }

    pub fn label(&self) -> String {
        match self.family {
            KernelFamily::Constant => format!("constant{}", self.c.unwrap_or(1.0)),
            KernelFamily::Product => format!("alpha{}", self.alpha.unwrap_or(0.0)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhiFamily {
    Uniform,
    Powerlaw,
    Monomer,
    Exponential,
    Table,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiSpec {
    pub family: PhiFamily,
    #[serde(default)]
    pub nu: Option<f64>,
    /// Table file with lines `i j k value`.
    #[serde(default)]
    pub path: Option<PathBuf>,
}

impl PhiSpec {
    pub fn of(family: PhiFamily) -> Self {
        Self { family, nu: None, path: None }
    }

    pub fn build(&self, base: &Path) -> CliResult<FragmentDistribution<f64>> {
        Ok(match self.family {
            PhiFamily::Uniform => FragmentDistribution::uniform(),
            PhiFamily::Monomer => FragmentDistribution::monomer(),
            PhiFamily::Exponential => FragmentDistribution::exponential(),
            PhiFamily::Powerlaw => {
                let nu = self.nu.ok_or_else(|| CliError::parse("phi.nu is required for family = \"powerlaw\""))?;
                FragmentDistribution::power_law(nu)?
            }
            PhiFamily::Table => {
                let path = self.path.as_ref().ok_or_else(|| CliError::parse("phi.path is required for family = \"table\""))?;
                let path = base.join(path);
                let text = fs::read_to_string(&path).map_err(|e| CliError::io(path.display(), e))?;
                FragmentDistribution::table(FragmentTable::parse(&text, None)?)
            }
        })
    }

    /// Constants `(α₀, α₁)` for which the catalog rule satisfies the
    /// fragment-domination inequality.
    pub fn bcond_constants(&self) -> Option<(f64, f64)> {
        match self.family {
            PhiFamily::Uniform => Some((2.0, 0.0)),
            PhiFamily::Monomer => Some((0.0, 1.0)),
            PhiFamily::Exponential => Some((1.0, 1.0)),
            PhiFamily::Powerlaw => power_law_constants(self.nu?).ok().map(|c| (c.alpha0, c.alpha1)),
            PhiFamily::Table => None,
        }
    }

    pub fn label(&self) -> String {
        match self.family {
            PhiFamily::Uniform => "uniform".into(),
            PhiFamily::Monomer => "monomer".into(),
            PhiFamily::Exponential => "exponential".into(),
            PhiFamily::Powerlaw => format!("powerlaw{}", self.nu.unwrap_or(0.0)),
            PhiFamily::Table => "table".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialKind {
    #[default]
    Geometric,
    Monomers,
    File,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSpec {
    #[serde(default)]
    pub kind: InitialKind,
    /// Monomer concentration for `kind = "monomers"`.
    #[serde(default)]
    pub value: Option<f64>,
    /// Whitespace-separated `ψ_1 … ψ_p` for `kind = "file"`.
    #[serde(default)]
    pub path: Option<PathBuf>,
}

impl InitialSpec {
    pub fn build(&self, p: usize, base: &Path) -> CliResult<StateVector<f64>> {
        match self.kind {
            InitialKind::Geometric => Ok(StateVector::geometric(p)),
            InitialKind::Monomers => Ok(StateVector::monomers(p, self.value.unwrap_or(1.0))?),
            InitialKind::File => {
                let path = self.path.as_ref().ok_or_else(|| CliError::parse("initial.path is required for kind = \"file\""))?;
                let path = base.join(path);
                let text = fs::read_to_string(&path).map_err(|e| CliError::io(path.display(), e))?;
                let psi = text
                    .split_whitespace()
                    .map(|t| t.parse::<f64>().map_err(|e| CliError::parse(format!("{}: {t:?}: {e}", path.display()))))
                    .collect::<CliResult<Vec<_>>>()?;
                if psi.len() != p {
                    return Err(CliError::parse(format!("{}: expected {p} values, found {}", path.display(), psi.len())));
                }
                Ok(StateVector::new(psi)?)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightFamily {
    Power,
    Logpower,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSpec {
    pub family: WeightFamily,
    pub m: f64,
}

impl Default for WeightSpec {
    fn default() -> Self {
        Self { family: WeightFamily::Power, m: 2.0 }
    }
}

impl WeightSpec {
    pub fn build(&self) -> CliResult<WeightFunction<f64>> {
        Ok(match self.family {
            WeightFamily::Power => WeightFunction::power(self.m)?,
            WeightFamily::Logpower => WeightFunction::log_power(self.m)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaSpec {
    /// Only `"power"`: `Λ_i = scale · i^exponent`.
    #[serde(default = "default_lambda_family")]
    pub family: String,
    #[serde(default = "one")]
    pub exponent: f64,
    #[serde(default = "one")]
    pub scale: f64,
}

fn default_lambda_family() -> String {
    "power".into()
}

fn one() -> f64 {
    1.0
}

impl Default for LambdaSpec {
    fn default() -> Self {
        Self { family: default_lambda_family(), exponent: 1.0, scale: 1.0 }
    }
}

impl LambdaSpec {
    pub fn build(&self) -> CliResult<WeightSequence<f64>> {
        if self.family != "power" {
            return Err(CliError::parse(format!("unknown lambda.family {:?} (expected \"power\")", self.family)));
        }
        Ok(WeightSequence::power(self.scale, self.exponent)?)
    }

    /// Parses `power:<exponent>` or `power:<exponent>:<scale>`.
    pub fn parse_flag(s: &str) -> CliResult<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<f64>().map_err(|e| CliError::parse(format!("lambda {s:?}: {e}")));
        match parts.as_slice() {
            ["power", e] => Ok(Self { family: "power".into(), exponent: num(e)?, scale: 1.0 }),
            ["power", e, c] => Ok(Self { family: "power".into(), exponent: num(e)?, scale: num(c)? }),
            _ => Err(CliError::parse(format!("lambda {s:?}: expected power:<exponent>[:<scale>]"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeName {
    #[default]
    ImplicitEuler,
    Rk4,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorSpec {
    #[serde(default)]
    pub scheme: SchemeName,
    #[serde(default = "default_newton_tol")]
    pub newton_tol: f64,
    #[serde(default = "default_newton_max_iter")]
    pub newton_max_iter: usize,
    /// `0` disables the early stop.
    #[serde(default = "default_steady_tol")]
    pub steady_tol: f64,
}

fn default_newton_tol() -> f64 {
    1e-12
}

fn default_newton_max_iter() -> usize {
    50
}

fn default_steady_tol() -> f64 {
    1e-10
}

impl Default for IntegratorSpec {
    fn default() -> Self {
        Self {
            scheme: SchemeName::default(),
            newton_tol: default_newton_tol(),
            newton_max_iter: default_newton_max_iter(),
            steady_tol: default_steady_tol(),
        }
    }
}

/// Kinetic objects resolved from a scenario.
#[derive(Debug, Clone)]
pub struct Built {
    pub system: System<f64>,
    pub initial: StateVector<f64>,
    pub weights: WeightFunction<f64>,
    pub lambda: WeightSequence<f64>,
    pub icfg: IntegratorConfig<f64>,
}

impl Scenario {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::parse(e.to_string()))
    }

    /// Reads a scenario; relative `path` entries resolve against its directory.
    pub fn load(path: &Path) -> CliResult<(Self, PathBuf)> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
        let scenario = Self::from_toml(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((scenario, base))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenarios serialize")
    }

    pub fn build(&self, base: &Path) -> CliResult<Built> {
        let kernel = self.kernel.build()?;
        let fragments = self.phi.build(base)?;
        let system = System::new(SystemConfig::new(self.p, kernel, fragments))?;
        let initial = self.initial.build(self.p, base)?;
        let scheme = match self.integrator.scheme {
            SchemeName::ImplicitEuler => Scheme::ImplicitEuler,
            SchemeName::Rk4 => Scheme::Rk4Oracle,
        };
        let icfg = IntegratorConfig {
            newton_tol: self.integrator.newton_tol,
            newton_max_iter: self.integrator.newton_max_iter,
            steady_tol: self.integrator.steady_tol,
            ..IntegratorConfig::new(self.dt, self.t_end).with_scheme(scheme)
        };
        icfg.validate()?;
        Ok(Built { system, initial, weights: self.weights.build()?, lambda: self.lambda.build()?, icfg })
    }
}
