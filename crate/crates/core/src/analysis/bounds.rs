use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::kinetics::WeightFunction;
use crate::scalar::Real;
use crate::system::{weighted, StateVector};

/// Constants of the reaction-term and tail estimates for one initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport<T> {
    /// `𝒥₀ = Σ G₀(i) ψ_i^in`.
    pub j0: T,
    /// `i ↦ C_i = 𝒥₀ / (i G₁′(i+1))`: bound on the time-integrated loss and
    /// gain of species `i`.
    pub c: BTreeMap<usize, T>,
    /// `m ↦ ε_m = 𝒥₀ / inf_{z≥m} z G₁′(z)`.
    pub eps: BTreeMap<usize, T>,
    /// `(m, i) ↦ ω_m(i) = α₁ 𝒥₀ / (G₁(m+1) − G₁(i))`, for `i ≤ m`.
    pub omega: BTreeMap<(usize, usize), T>,
}

pub fn compute_bounds<T: Real>(
    initial: &StateVector<T>,
    g: &WeightFunction<T>,
    alpha1: T,
    i_max: usize,
    m_max: usize,
) -> Result<BoundsReport<T>> {
    if i_max == 0 || i_max > m_max {
        return Err(Error::Argument(format!("need 1 ≤ i_max ≤ m_max, got ({i_max}, {m_max})")));
    }
    if !(alpha1 >= T::zero()) {
        return Err(Error::Argument(format!("α₁ must be non-negative, got {alpha1}")));
    }
    let j0 = weighted(initial.as_slice(), |i| g.g0(T::from_index(i)));
    let c = (1..=i_max)
        .map(|i| (i, j0 / (T::from_index(i) * g.g1_prime(T::from_index(i + 1)))))
        .collect();
    let eps = (1..=m_max).map(|m| (m, j0 / g.inf_z_g1_prime_from(T::from_index(m)))).collect();
    let mut omega = BTreeMap::new();
    for i in 1..=i_max {
        let g1_i = g.g1(T::from_index(i));
        for m in i..=m_max {
            let gap = g.g1(T::from_index(m + 1)) - g1_i;
            if !(gap > T::zero()) {
                return Err(Error::Degenerate(format!("G1({}) − G1({i}) = {gap}", m + 1)));
            }
            omega.insert((m, i), alpha1 * j0 / gap);
        }
    }
    Ok(BoundsReport { j0, c, eps, omega })
}
