use crate::error::{Error, Result};
use crate::integrator::Trajectory;
use crate::scalar::Real;
use crate::system::System;

/// End-of-run distance to the monodisperse state carrying the initial mass.
#[derive(Debug, Clone, PartialEq)]
pub struct LongTimeReport<T> {
    pub t_end: T,
    /// `ψ_i(t_end)` for `i ≥ 2`, indexed from `i = 2`.
    pub tail: Vec<T>,
    pub tail_max: T,
    /// `|ψ₁(t_end) − m1(0)|`.
    pub monomer_deviation: T,
    /// `|m0(t_end) − m1(0)|`.
    pub number_deviation: T,
    /// Exponential rate fitted to `max_{i≥2} ψ_i` over the second half of the
    /// run, when both endpoints are positive.
    pub decay_rate: Option<T>,
}

fn tail_max<T: Real>(psi: &[T]) -> T {
    psi.iter().skip(1).copied().fold(T::zero(), T::max)
}

pub fn longtime_report<T: Real>(traj: &Trajectory<T>, system: &System<T>) -> Result<LongTimeReport<T>> {
    if traj.is_empty() {
        return Err(Error::Argument("empty trajectory".into()));
    }
    if let Some(i) = (2..=system.p()).find(|&i| !(system.gamma(i, i) > T::zero())) {
        return Err(Error::Precondition(format!("Γ({i},{i}) must be positive")));
    }
    let m1_0 = traj.initial().state.mass();
    let last = traj.last();
    let psi = last.state.as_slice();
    let tail: Vec<T> = psi.iter().skip(1).copied().collect();

    let mid = &traj.samples[(traj.len() - 1) / 2];
    let (a, b) = (tail_max(mid.state.as_slice()), tail_max(psi));
    let decay_rate = (last.t > mid.t && a > T::zero() && b > T::zero()).then(|| (a.ln() - b.ln()) / (last.t - mid.t));

    Ok(LongTimeReport {
        t_end: last.t,
        tail_max: tail_max(psi),
        tail,
        monomer_deviation: (psi.first().copied().unwrap_or_else(T::zero) - m1_0).abs(),
        number_deviation: (last.state.number() - m1_0).abs(),
        decay_rate,
    })
}
