//! Non-simulation subcommands. Each returns its printable report.

use std::fmt::Write as _;
use std::path::Path;

use breakage::analysis::{compute_bounds, gronwall_experiment};
use breakage::kinetics::{
    check_weight_class, find_bcond_witness, integer_grid, validate_kernel, validate_lmc1, BcondStatus, Lmc1Mode,
    FLOAT_RELATIVE_TOLERANCE,
};
use breakage::system::StateVector;

use crate::config::{KernelSpec, LambdaSpec, PhiSpec, Scenario, WeightSpec};
use crate::error::{CliError, CliResult, Failure};
use crate::output::{ensure_dir, Table};

/// Printable outcome with the certification verdict.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub text: String,
    pub certified: bool,
}

impl Verdict {
    /// Uncertified results exit with the validation status.
    pub fn into_result(self) -> CliResult<String> {
        if self.certified {
            Ok(self.text)
        } else {
            Err(CliError::validation(self.text))
        }
    }
}

pub fn validate_phi(spec: &PhiSpec, alphas: Option<(f64, f64)>, jmax: usize, kmax: usize) -> CliResult<Verdict> {
    let phi = spec.build(Path::new("."))?;
    let mode = if phi.has_exact_entries() { Lmc1Mode::ExactRational } else { Lmc1Mode::Tolerance(FLOAT_RELATIVE_TOLERANCE) };
    let lmc = validate_lmc1(&phi, jmax, kmax, mode)?;
    let mut text = String::new();
    let _ = write!(text, "mass conservation of {} for j <= {jmax}, k <= {kmax} ", phi.name());
    match mode {
        Lmc1Mode::ExactRational => text.push_str("(exact): "),
        Lmc1Mode::Tolerance(t) => {
            let _ = write!(text, "(tolerance {t:e}): ");
        }
    }
    match lmc.first_failure {
        None => text.push_str("certified\n"),
        Some((j, k)) => {
            let _ = writeln!(text, "VIOLATED at j = {j}, k = {k}");
        }
    }
    let mut certified = lmc.certified;
    let (a0, a1) = alphas
        .or_else(|| spec.bcond_constants())
        .ok_or_else(|| CliError::parse("--alpha0 and --alpha1 are required for this family"))?;
    let w = find_bcond_witness(&phi, a0, a1, jmax, kmax)?;
    let _ = write!(text, "fragment domination with alpha0 = {a0}, alpha1 = {a1} ({}): ", if w.exact { "exact" } else { "tolerance" });
    match w.status {
        BcondStatus::Certified => text.push_str("certified\n"),
        BcondStatus::Violated { i, j, k } => {
            let _ = writeln!(text, "VIOLATED at i = {i}, j = {j}, k = {k}");
        }
    }
    certified &= w.is_certified();
    let _ = writeln!(text, "bounded: {}", phi.is_bounded());
    Ok(Verdict { text, certified })
}

pub fn validate_kernel_cmd(spec: &KernelSpec, lambda: Option<&LambdaSpec>, p: usize) -> CliResult<Verdict> {
    let kernel = spec.build()?;
    let lambda = lambda.map(LambdaSpec::build).transpose()?;
    let mut report = validate_kernel(&kernel, lambda.as_ref(), p)?;
    if let Some(l) = &lambda {
        report.absorb(l.validate(p, true));
    }
    Ok(Verdict { certified: report.certified, text: format!("{report}\n") })
}

pub fn validate_weights(spec: &WeightSpec, grid: usize) -> CliResult<Verdict> {
    let g = spec.build()?;
    let report = check_weight_class(&g, &integer_grid(grid))?;
    Ok(Verdict { certified: report.certified, text: format!("{report}\n") })
}

pub fn bounds(scenario: &Scenario, base: &Path, alpha1: Option<f64>, i_max: usize, m_max: usize) -> CliResult<String> {
    let built = scenario.build(base)?;
    let alpha1 = alpha1
        .or_else(|| scenario.phi.bcond_constants().map(|c| c.1))
        .ok_or_else(|| CliError::parse("--alpha1 is required for this fragment family"))?;
    let b = compute_bounds(&built.initial, &built.weights, alpha1, i_max, m_max)?;
    let mut s = String::new();
    let _ = writeln!(s, "weight: {}", built.weights.name());
    let _ = writeln!(s, "J0 = {}", b.j0);
    let _ = writeln!(s, "alpha1 = {alpha1}");
    s.push_str("i,C_i\n");
    for (i, c) in &b.c {
        let _ = writeln!(s, "{i},{c}");
    }
    s.push_str("m,eps_m\n");
    for (m, e) in &b.eps {
        let _ = writeln!(s, "{m},{e}");
    }
    s.push_str("m,i,omega_m_i\n");
    for ((m, i), w) in &b.omega {
        let _ = writeln!(s, "{m},{i},{w}");
    }
    Ok(s)
}

/// Parses `i:eps`.
pub fn parse_perturbation(s: &str) -> CliResult<(usize, f64)> {
    let (i, eps) = s.split_once(':').ok_or_else(|| CliError::parse(format!("perturbation {s:?}: expected i:eps")))?;
    let i = i.parse::<usize>().map_err(|e| CliError::parse(format!("perturbation index {i:?}: {e}")))?;
    let eps = eps.parse::<f64>().map_err(|e| CliError::parse(format!("perturbation size {eps:?}: {e}")))?;
    Ok((i, eps))
}

/// Contract slack on `d(t) ≤ bound(t)`.
pub const GRONWALL_SLACK: f64 = 1e-6;

pub fn gronwall(scenario: &Scenario, base: &Path, perturb: (usize, f64), out: Option<&Path>) -> CliResult<String> {
    let built = scenario.build(base)?;
    let (i, eps) = perturb;
    if i == 0 || i > scenario.p {
        return Err(CliError::parse(format!("perturbation index {i} outside 1..={}", scenario.p)));
    }
    let mut psi = built.initial.clone().into_vec();
    psi[i - 1] += eps;
    let other = StateVector::new(psi)?;
    let series = gronwall_experiment(&built.initial, &other, &built.system, &built.icfg, &built.lambda)?;
    if let Some(dir) = out {
        ensure_dir(dir)?;
        let mut table = Table::new(["t", "d", "bound"].map(String::from).to_vec());
        for k in 0..series.times.len() {
            table.push_row(&[series.times[k], series.distance[k], series.bound[k]]);
        }
        table.write(&dir.join("gronwall.csv"))?;
    }
    let ratio = series.worst_ratio();
    let text = format!(
        "M_lambda2 = {}\nd(0) = {}\nmax d/bound = {ratio}\nsamples = {}\n",
        series.m_lambda_sq,
        series.distance[0],
        series.times.len()
    );
    if series.contract_holds(GRONWALL_SLACK) {
        Ok(text)
    } else {
        Err(CliError::new(Failure::Monitor, format!("{text}contraction bound exceeded")))
    }
}
