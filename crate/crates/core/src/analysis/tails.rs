use crate::analysis::{compute_bounds, trapezoid};
use crate::error::Result;
use crate::integrator::Trajectory;
use crate::kinetics::{ValidationReport, WeightFunction, WeightSequence};
use crate::scalar::Real;
use crate::system::{tail_moment, weighted, System};

/// Relative slack for inequalities checked through trapezoidal quadrature.
pub const QUADRATURE_SLACK: f64 = 0.01;

/// `10 · newton_tol · m1(0)`: the drift a conserved quantity may accumulate
/// from Newton residuals.
pub fn default_slack<T: Real>(newton_tol: T, initial_mass: T) -> T {
    T::lit(10.0) * newton_tol * initial_mass
}

/// Certifies `Σ_{i≥r} Λ_i ψ_i(t) ≤ Σ_{i≥r} Λ_i ψ_i(0) + slack` at every sample.
pub fn check_tail_monotonicity<T: Real>(
    traj: &Trajectory<T>,
    lambda: &WeightSequence<T>,
    rs: &[usize],
    slack: T,
) -> ValidationReport {
    let mut report = ValidationReport::new("tail estimate");
    let psi0 = traj.initial().state.as_slice();
    for &r in rs {
        let reference = tail_moment(psi0, lambda, r);
        for s in &traj.samples {
            let now = tail_moment(s.state.as_slice(), lambda, r);
            let margin = (reference + slack - now).as_f64();
            report.record(margin, || format!("r = {r}, t = {}: tail {now} > initial {reference}", s.t));
        }
    }
    report
}

/// Certifies `Σ_{i≥r} Λ_i (dψ_i/dt) ≤ 0` at every sample, allowing
/// `1e-12 · Σ_{i≥r} Λ_i (gain_i + loss_i)` for round-off.
pub fn check_tail_dissipation<T: Real>(
    traj: &Trajectory<T>,
    system: &System<T>,
    lambda: &WeightSequence<T>,
    rs: &[usize],
) -> Result<ValidationReport> {
    let mut report = ValidationReport::new("tail dissipation");
    for s in &traj.samples {
        let terms = system.reaction_terms(s.state.as_slice())?;
        for &r in rs {
            let mut flux = T::zero();
            let mut scale = T::zero();
            for i in r.max(1)..=system.p() {
                let w = lambda.get(i);
                flux += w * (terms.gain[i - 1] - terms.loss[i - 1]);
                scale += w * (terms.gain[i - 1] + terms.loss[i - 1]);
            }
            let margin = (T::lit(1e-12) * scale - flux).as_f64();
            report.record(margin, || format!("r = {r}, t = {}: tail flux {flux} > 0", s.t));
        }
    }
    Ok(report)
}

/// Certifies `Σ G₀(i) ψ_i(t) ≤ 𝒥₀ + slack` at every sample.
pub fn check_g0_moment_bound<T: Real>(traj: &Trajectory<T>, g: &WeightFunction<T>, slack: T) -> ValidationReport {
    let mut report = ValidationReport::new(format!("G0 moment bound ({})", g.name()));
    let moment = |psi: &[T]| weighted(psi, |i| g.g0(T::from_index(i)));
    let j0 = moment(traj.initial().state.as_slice());
    for s in &traj.samples {
        let now = moment(s.state.as_slice());
        report.record((j0 + slack - now).as_f64(), || format!("t = {}: {now} > J0 = {j0}", s.t));
    }
    report
}

/// Time integrals of the reaction terms of one species against `C_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReactionBoundEntry {
    pub i: usize,
    pub c_i: f64,
    pub loss_integral: f64,
    pub gain_integral: f64,
    /// `∫ |dψ_i/dt|`, bounded by `2 C_i`.
    pub variation_integral: f64,
}

/// Integrates loss, gain and `|dψ_i/dt|` along the stored samples (trapezoid)
/// and checks them against `C_i`, `C_i` and `2 C_i` with
/// [`QUADRATURE_SLACK`] relative slack.
pub fn check_reaction_bounds<T: Real>(
    traj: &Trajectory<T>,
    system: &System<T>,
    g: &WeightFunction<T>,
    species: &[usize],
) -> Result<(ValidationReport, Vec<ReactionBoundEntry>)> {
    let i_max = species.iter().copied().max().unwrap_or(1).max(1);
    let bounds = compute_bounds(&traj.initial().state, g, T::zero(), i_max, i_max)?;
    let times = traj.times();
    let terms = traj
        .samples
        .iter()
        .map(|s| system.reaction_terms(s.state.as_slice()))
        .collect::<Result<Vec<_>>>()?;
    let mut report = ValidationReport::new("reaction-term integrals");
    let mut entries = Vec::new();
    let slack = 1.0 + QUADRATURE_SLACK;
    for &i in species {
        let series = |f: &dyn Fn(usize) -> T| -> Vec<T> { (0..terms.len()).map(f).collect() };
        let loss = trapezoid(&times, &series(&|n| terms[n].loss[i - 1])).as_f64();
        let gain = trapezoid(&times, &series(&|n| terms[n].gain[i - 1])).as_f64();
        let var = trapezoid(&times, &series(&|n| (terms[n].gain[i - 1] - terms[n].loss[i - 1]).abs())).as_f64();
        let c_i = bounds.c[&i].as_f64();
        report.record(slack * c_i - loss, || format!("i = {i}: ∫loss = {loss} > C_i = {c_i}"));
        report.record(slack * c_i - gain, || format!("i = {i}: ∫gain = {gain} > C_i = {c_i}"));
        report.record(slack * 2.0 * c_i - var, || format!("i = {i}: ∫|dψ/dt| = {var} > 2 C_i = {}", 2.0 * c_i));
        entries.push(ReactionBoundEntry { i, c_i, loss_integral: loss, gain_integral: gain, variation_integral: var });
    }
    Ok((report, entries))
}
