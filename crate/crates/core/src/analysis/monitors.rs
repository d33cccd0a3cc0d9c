use crate::integrator::{Monitor, MonitorVerdict, Sample};
use crate::kinetics::{WeightFunction, WeightSequence};
use crate::scalar::Real;
use crate::system::{tail_moment, weighted};

/// Relative drift of `m1` from its initial value.
#[derive(Debug, Clone)]
pub struct MassDriftMonitor<T> {
    pub rel_tol: T,
    reference: Option<T>,
    worst: T,
}

impl<T: Real> MassDriftMonitor<T> {
    pub fn new(rel_tol: T) -> Self {
        Self { rel_tol, reference: None, worst: T::zero() }
    }

    pub fn worst(&self) -> T {
        self.worst
    }
}

impl<T: Real> Monitor<T> for MassDriftMonitor<T> {
    fn name(&self) -> String {
        "mass drift".into()
    }

    fn observe(&mut self, s: &Sample<T>) {
        let m1 = s.diagnostics.m1;
        let m1_0 = *self.reference.get_or_insert(m1);
        let drift = if m1_0 > T::zero() { ((m1 - m1_0) / m1_0).abs() } else { m1.abs() };
        self.worst = self.worst.max(drift);
    }

    fn verdict(&self) -> MonitorVerdict {
        MonitorVerdict {
            name: self.name(),
            passed: self.worst <= self.rel_tol,
            detail: format!("max relative drift {:e} (tolerance {:e})", self.worst.as_f64(), self.rel_tol.as_f64()),
        }
    }
}

/// Largest step-to-step decrease of `m0`.
#[derive(Debug, Clone)]
pub struct NumberGrowthMonitor<T> {
    pub slack: T,
    prev: Option<T>,
    worst_drop: T,
}

impl<T: Real> NumberGrowthMonitor<T> {
    pub fn new(slack: T) -> Self {
        Self { slack, prev: None, worst_drop: T::zero() }
    }
}

impl<T: Real> Monitor<T> for NumberGrowthMonitor<T> {
    fn name(&self) -> String {
        "number growth".into()
    }

    fn observe(&mut self, s: &Sample<T>) {
        let m0 = s.diagnostics.m0;
        if let Some(prev) = self.prev {
            self.worst_drop = self.worst_drop.max(prev - m0);
        }
        self.prev = Some(m0);
    }

    fn verdict(&self) -> MonitorVerdict {
        MonitorVerdict {
            name: self.name(),
            passed: self.worst_drop <= self.slack,
            detail: format!("largest m0 decrease {:e} (slack {:e})", self.worst_drop.as_f64(), self.slack.as_f64()),
        }
    }
}

/// Excess of `Σ_{i≥r} Λ_i ψ_i(t)` over its initial value.
#[derive(Debug, Clone)]
pub struct TailMonitor<T> {
    lambda: WeightSequence<T>,
    rs: Vec<usize>,
    pub slack: T,
    reference: Vec<T>,
    worst: T,
}

impl<T: Real> TailMonitor<T> {
    pub fn new(lambda: WeightSequence<T>, rs: Vec<usize>, slack: T) -> Self {
        Self { lambda, rs, slack, reference: Vec::new(), worst: T::neg_infinity() }
    }
}

impl<T: Real> Monitor<T> for TailMonitor<T> {
    fn name(&self) -> String {
        "tail monotonicity".into()
    }

    fn observe(&mut self, s: &Sample<T>) {
        let psi = s.state.as_slice();
        let now: Vec<T> = self.rs.iter().map(|&r| tail_moment(psi, &self.lambda, r)).collect();
        if self.reference.is_empty() {
            self.reference = now;
            return;
        }
        for (n, r0) in now.iter().zip(&self.reference) {
            self.worst = self.worst.max(*n - *r0);
        }
    }

    fn verdict(&self) -> MonitorVerdict {
        let worst = self.worst.max(T::zero());
        MonitorVerdict {
            name: self.name(),
            passed: worst <= self.slack,
            detail: format!("r in {:?}: largest tail excess {:e} (slack {:e})", self.rs, worst.as_f64(), self.slack.as_f64()),
        }
    }
}

/// Excess of `Σ G₀(i) ψ_i(t)` over `𝒥₀`.
#[derive(Debug, Clone)]
pub struct G0BoundMonitor<T> {
    g: WeightFunction<T>,
    pub slack: T,
    j0: Option<T>,
    worst: T,
}

impl<T: Real> G0BoundMonitor<T> {
    pub fn new(g: WeightFunction<T>, slack: T) -> Self {
        Self { g, slack, j0: None, worst: T::zero() }
    }
}

impl<T: Real> Monitor<T> for G0BoundMonitor<T> {
    fn name(&self) -> String {
        "G0 moment bound".into()
    }

    fn observe(&mut self, s: &Sample<T>) {
        let g = &self.g;
        let now = weighted(s.state.as_slice(), |i| g.g0(T::from_index(i)));
        let j0 = *self.j0.get_or_insert(now);
        self.worst = self.worst.max(now - j0);
    }

    fn verdict(&self) -> MonitorVerdict {
        MonitorVerdict {
            name: self.name(),
            passed: self.worst <= self.slack,
            detail: format!(
                "{}: largest excess over J0 {:e} (slack {:e})",
                self.g.name(),
                self.worst.as_f64(),
                self.slack.as_f64()
            ),
        }
    }
}
