//! Fixed-step time integration of the truncated system.

mod implicit;
mod rk4;

pub use implicit::{implicit_euler_step, StepOutcome};
pub use rk4::rk4_step;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::system::{StateVector, System};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Backward Euler with full Newton. The production scheme.
    ImplicitEuler,
    /// Explicit RK4, used only as an independent reference.
    Rk4Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig<T> {
    pub scheme: Scheme,
    pub dt: T,
    pub t_end: T,
    /// Bound on `Σ i |r_i|` for the Newton residual `r`.
    pub newton_tol: T,
    pub newton_max_iter: usize,
    /// Stop once `‖dψ/dt‖₁` drops below this; non-positive disables the check.
    pub steady_tol: T,
}

impl<T: Real> IntegratorConfig<T> {
    /// Implicit Euler with Newton tolerance `1e-12`, at most 50 iterations,
    /// and steady-state threshold `1e-10`.
    pub fn new(dt: T, t_end: T) -> Self {
        Self {
            scheme: Scheme::ImplicitEuler,
            dt,
            t_end,
            newton_tol: T::lit(1e-12),
            newton_max_iter: 50,
            steady_tol: T::lit(1e-10),
        }
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn without_steady_stop(mut self) -> Self {
        self.steady_tol = T::zero();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > T::zero()) || !self.dt.is_finite() {
            return Err(Error::Argument(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_end >= T::zero()) || !self.t_end.is_finite() {
            return Err(Error::Argument(format!("t_end must be non-negative, got {}", self.t_end)));
        }
        if !(self.newton_tol > T::zero()) {
            return Err(Error::Argument(format!("newton_tol must be positive, got {}", self.newton_tol)));
        }
        if self.newton_max_iter == 0 {
            return Err(Error::Argument("newton_max_iter must be at least 1".into()));
        }
        Ok(())
    }

    /// Number of steps; the last one is shortened to land on `t_end`.
    pub fn step_count(&self) -> usize {
        let ratio = (self.t_end / self.dt).as_f64();
        let n = (ratio - 1e-9).ceil();
        if n <= 0.0 {
            0
        } else {
            n as usize
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepDiagnostics<T> {
    pub newton_iterations: usize,
    pub newton_residual: T,
    pub m0: T,
    pub m1: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample<T> {
    pub t: T,
    pub state: StateVector<T>,
    pub diagnostics: StepDiagnostics<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    ReachedEnd,
    SteadyState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub samples: Vec<Sample<T>>,
    pub stop: StopReason,
}

impl<T: Real> Trajectory<T> {
    pub fn initial(&self) -> &Sample<T> {
        &self.samples[0]
    }

    pub fn last(&self) -> &Sample<T> {
        self.samples.last().expect("trajectories hold at least the initial sample")
    }

    pub fn times(&self) -> Vec<T> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Pass/fail summary of a monitor after a run.
#[derive(Debug, Clone, PartialEq)]
pub struct MonitorVerdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Observer invoked on the initial sample and on every accepted step.
pub trait Monitor<T: Real> {
    fn name(&self) -> String;
    fn observe(&mut self, sample: &Sample<T>);
    fn verdict(&self) -> MonitorVerdict;
}

fn sample<T: Real>(t: T, state: StateVector<T>, newton_iterations: usize, newton_residual: T) -> Sample<T> {
    let diagnostics = StepDiagnostics { newton_iterations, newton_residual, m0: state.number(), m1: state.mass() };
    Sample { t, state, diagnostics }
}

fn is_steady<T: Real>(system: &System<T>, psi: &[T], tol: T) -> Result<bool> {
    Ok(tol > T::zero() && system.rhs_l1(psi)? < tol)
}

/// One implicit Euler step of size `icfg.dt`.
pub fn step_implicit_euler<T: Real>(
    state: &StateVector<T>,
    system: &System<T>,
    icfg: &IntegratorConfig<T>,
) -> Result<StepOutcome<T>> {
    icfg.validate()?;
    implicit_euler_step(system, state.as_slice(), icfg.dt, icfg.newton_tol, icfg.newton_max_iter)
}

/// Marches from `initial` to `icfg.t_end` with a fixed step, stopping early
/// once the state is steady.
pub fn integrate<T: Real>(
    initial: &StateVector<T>,
    system: &System<T>,
    icfg: &IntegratorConfig<T>,
    monitors: &mut [&mut dyn Monitor<T>],
) -> Result<Trajectory<T>> {
    icfg.validate()?;
    if initial.dim() != system.p() {
        return Err(Error::Dimension { expected: system.p(), got: initial.dim() });
    }
    let first = sample(T::zero(), initial.clone(), 0, T::zero());
    for m in monitors.iter_mut() {
        m.observe(&first);
    }
    let mut samples = vec![first];
    if is_steady(system, initial.as_slice(), icfg.steady_tol)? {
        return Ok(Trajectory { samples, stop: StopReason::SteadyState });
    }

    let n_steps = icfg.step_count();
    let mut raw = initial.as_slice().to_vec();
    for n in 1..=n_steps {
        let (t, h) = if n < n_steps {
            (icfg.dt * T::from_index(n), icfg.dt)
        } else {
            (icfg.t_end, icfg.t_end - icfg.dt * T::from_index(n - 1))
        };
        let attach = |e: Error| Error::Step { t: t.as_f64(), source: Box::new(e) };
        let (state, iterations, resid) = match icfg.scheme {
            Scheme::ImplicitEuler => {
                let out = implicit_euler_step(system, &raw, h, icfg.newton_tol, icfg.newton_max_iter).map_err(attach)?;
                raw.clone_from(&out.psi);
                (StateVector::new(out.psi).map_err(attach)?, out.iterations, out.residual)
            }
            Scheme::Rk4Oracle => {
                raw = rk4_step(system, &raw, h).map_err(attach)?;
                (StateVector::clamped(raw.clone()).map_err(attach)?, 0, T::zero())
            }
        };
        let s = sample(t, state, iterations, resid);
        for m in monitors.iter_mut() {
            m.observe(&s);
        }
        let steady = is_steady(system, s.state.as_slice(), icfg.steady_tol)?;
        samples.push(s);
        if steady {
            return Ok(Trajectory { samples, stop: StopReason::SteadyState });
        }
    }
    Ok(Trajectory { samples, stop: StopReason::ReachedEnd })
}

/// First sample with `‖dψ/dt‖₁ < tol`.
pub fn detect_steady_state<T: Real>(
    traj: &Trajectory<T>,
    system: &System<T>,
    tol: T,
) -> Result<Option<(T, StateVector<T>)>> {
    if traj.is_empty() {
        return Err(Error::Argument("empty trajectory".into()));
    }
    for s in &traj.samples {
        if system.rhs_l1(s.state.as_slice())? < tol {
            return Ok(Some((s.t, s.state.clone())));
        }
    }
    Ok(None)
}
