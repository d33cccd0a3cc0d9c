use std::collections::BTreeMap;

use crate::kinetics::{WeightFunction, WeightSequence};
use crate::scalar::Real;
use crate::system::StateVector;

/// `Σ_i w(i) ψ_i` in ascending `i`.
pub fn weighted<T: Real>(psi: &[T], w: impl Fn(usize) -> T) -> T {
    psi.iter().enumerate().fold(T::zero(), |s, (n, &v)| s + w(n + 1) * v)
}

pub fn number<T: Real>(psi: &[T]) -> T {
    psi.iter().fold(T::zero(), |s, &v| s + v)
}

pub fn mass<T: Real>(psi: &[T]) -> T {
    weighted(psi, T::from_index)
}

/// `Σ_{i ≥ r} Λ_i ψ_i`.
pub fn tail_moment<T: Real>(psi: &[T], lambda: &WeightSequence<T>, r: usize) -> T {
    let start = r.max(1);
    (start..=psi.len()).fold(T::zero(), |s, i| s + lambda.get(i) * psi[i - 1])
}

/// Moments of one state.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport<T> {
    /// `Σ ψ_i`, the number of clusters.
    pub m0: T,
    /// `Σ i ψ_i`, the total mass.
    pub m1: T,
    /// `Σ G₀(i) ψ_i`.
    pub g0_moment: T,
    /// `Σ Λ_i ψ_i`.
    pub lambda_moment: T,
    /// `Σ Λ_i² ψ_i`.
    pub lambda_sq_moment: T,
    /// `r ↦ Σ_{i≥r} Λ_i ψ_i`.
    pub tail_moments: BTreeMap<usize, T>,
}

pub fn moments<T: Real>(
    state: &StateVector<T>,
    g: &WeightFunction<T>,
    lambda: &WeightSequence<T>,
    tails: &[usize],
) -> MomentReport<T> {
    let psi = state.as_slice();
    MomentReport {
        m0: number(psi),
        m1: mass(psi),
        g0_moment: weighted(psi, |i| g.g0(T::from_index(i))),
        lambda_moment: weighted(psi, |i| lambda.get(i)),
        lambda_sq_moment: weighted(psi, |i| lambda.get(i).powi(2)),
        tail_moments: tails.iter().map(|&r| (r, tail_moment(psi, lambda, r))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_mass_matches_closed_form() {
        let s = StateVector::<f64>::geometric(40);
        let closed = 2.0 - 42.0 * 2f64.powi(-40);
        assert!((s.mass() - closed).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn second_moment_limit() {
        // Σ_{i≤p} i² 2^{−i} = 6 − (p² + 4p + 6) 2^{−p}; the remainder at p = 60 is below 1e-13.
        let g = WeightFunction::power(2.0).unwrap();
        let lam = WeightSequence::monomial(1.0).unwrap();
        let p = 60;
        let r = moments(&StateVector::<f64>::geometric(p), &g, &lam, &[1, 2]);
        let pf = p as f64;
        let remainder = (pf * pf + 4.0 * pf + 6.0) * 2f64.powi(-(p as i32));
        assert!(remainder < 1e-13);
        assert!((r.g0_moment - 6.0).abs() <= remainder + 1e-14);
        assert_eq!(r.tail_moments[&1], r.m1);
        assert!((r.tail_moments[&2] - (r.m1 - 0.5)).abs() < 1e-15);
        assert_eq!(r.lambda_sq_moment, r.g0_moment);
    }

    #[test]
    fn monomer_state() {
        let s = StateVector::monomers(5, 3.5).unwrap();
        assert_eq!(s.number(), 3.5);
        assert_eq!(s.mass(), 3.5);
    }

    #[test]
    fn tails_beyond_truncation_vanish() {
        let lam = WeightSequence::monomial(1.0).unwrap();
        assert_eq!(tail_moment(&[1.0, 1.0], &lam, 5), 0.0);
    }
}
