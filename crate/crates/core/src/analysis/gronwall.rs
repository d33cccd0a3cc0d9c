use crate::error::{Error, Result};
use crate::integrator::{integrate, IntegratorConfig};
use crate::kinetics::{validate_kernel, WeightSequence};
use crate::scalar::Real;
use crate::system::{weighted, StateVector, System};

/// Weighted l1 distance between two trajectories on a shared grid, with the
/// exponential envelope `d(0) exp(2 M_{Λ²} t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceSeries<T> {
    pub times: Vec<T>,
    pub distance: Vec<T>,
    pub bound: Vec<T>,
    /// Larger of the two initial `Σ Λ_i² ψ_i`.
    pub m_lambda_sq: T,
}

impl<T: Real> DistanceSeries<T> {
    /// Largest `d(t) / bound(t)`; zero when `d(0) = 0` and `d` stays zero.
    pub fn worst_ratio(&self) -> f64 {
        self.distance
            .iter()
            .zip(&self.bound)
            .map(|(d, b)| {
                let (d, b) = (d.as_f64(), b.as_f64());
                if b > 0.0 {
                    d / b
                } else if d == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            })
            .fold(0.0, f64::max)
    }

    /// `d(t) ≤ bound(t) (1 + rel)` at every sample.
    pub fn contract_holds(&self, rel: f64) -> bool {
        self.worst_ratio() <= 1.0 + rel
    }
}

fn distance<T: Real>(a: &[T], b: &[T], lambda: &WeightSequence<T>) -> T {
    a.iter().zip(b).enumerate().fold(T::zero(), |s, (n, (x, y))| s + lambda.get(n + 1) * (*x - *y).abs())
}

/// Integrates both initial states with the same configuration and compares
/// their weighted distance against the exponential envelope.
pub fn gronwall_experiment<T: Real>(
    initial_a: &StateVector<T>,
    initial_b: &StateVector<T>,
    system: &System<T>,
    icfg: &IntegratorConfig<T>,
    lambda: &WeightSequence<T>,
) -> Result<DistanceSeries<T>> {
    let p = system.p();
    if initial_a.dim() != p || initial_b.dim() != p {
        return Err(Error::Dimension { expected: p, got: initial_a.dim().max(initial_b.dim()) });
    }
    let seq = lambda.validate(p, true);
    if !seq.certified {
        return Err(Error::Precondition(format!("Λ sequence rejected: {seq}")));
    }
    let kernel = validate_kernel(&system.config().kernel, Some(lambda), p)?;
    if !kernel.certified {
        return Err(Error::Precondition(format!("kernel is not dominated by Λ_i Λ_j: {kernel}")));
    }
    if !system.config().fragments.is_bounded() {
        return Err(Error::Precondition(format!(
            "fragment distribution {} is not bounded",
            system.config().fragments.name()
        )));
    }

    let icfg = icfg.without_steady_stop();
    let a = integrate(initial_a, system, &icfg, &mut [])?;
    let b = integrate(initial_b, system, &icfg, &mut [])?;
    let lsq = |s: &StateVector<T>| weighted(s.as_slice(), |i| lambda.get(i) * lambda.get(i));
    let m_lambda_sq = lsq(initial_a).max(lsq(initial_b));

    let times = a.times();
    let distance: Vec<T> =
        a.samples.iter().zip(&b.samples).map(|(x, y)| distance(x.state.as_slice(), y.state.as_slice(), lambda)).collect();
    let d0 = distance[0];
    let bound = times.iter().map(|&t| d0 * (T::lit(2.0) * m_lambda_sq * t).exp()).collect();
    Ok(DistanceSeries { times, distance, bound, m_lambda_sq })
}
