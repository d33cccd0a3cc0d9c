use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Densities `ψ_1..ψ_p` of the truncated system at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    psi: Vec<T>,
}

impl<T: Real> StateVector<T> {
    /// Rejects negative or non-finite components.
    pub fn new(psi: Vec<T>) -> Result<Self> {
        if psi.is_empty() {
            return Err(Error::Argument("empty state".into()));
        }
        if let Some((i, v)) = psi.iter().enumerate().find(|(_, v)| !(**v >= T::zero()) || !v.is_finite()) {
            return Err(Error::Negative { index: i + 1, value: v.as_f64() });
        }
        Ok(Self { psi })
    }

    /// Sets negative round-off to zero. Used only when storing or reporting.
    pub fn clamped(mut psi: Vec<T>) -> Result<Self> {
        for v in &mut psi {
            if *v < T::zero() {
                *v = T::zero();
            }
        }
        Self::new(psi)
    }

    /// `ψ_i = 2^{−i}`, `i = 1..=p`.
    pub fn geometric(p: usize) -> Self {
        let half = T::lit(0.5);
        let mut v = T::one();
        let psi = (0..p)
            .map(|_| {
                v *= half;
                v
            })
            .collect();
        Self { psi }
    }

    /// Only monomers, `ψ = (c, 0, …, 0)`.
    pub fn monomers(p: usize, c: T) -> Result<Self> {
        let mut psi = vec![T::zero(); p];
        if let Some(first) = psi.first_mut() {
            *first = c;
        }
        Self::new(psi)
    }

    pub fn dim(&self) -> usize {
        self.psi.len()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.psi
    }

    pub fn into_vec(self) -> Vec<T> {
        self.psi
    }

    /// `ψ_i`, 1-based.
    pub fn get(&self, i: usize) -> T {
        self.psi[i - 1]
    }

    /// Total number of clusters `Σ ψ_i`.
    pub fn number(&self) -> T {
        super::moments::number(&self.psi)
    }

    /// Total mass `Σ i ψ_i`.
    pub fn mass(&self) -> T {
        super::moments::mass(&self.psi)
    }
}

impl<T> Index<usize> for StateVector<T> {
    type Output = T;

    /// 0-based access, `state[0] = ψ_1`.
    fn index(&self, idx: usize) -> &T {
        &self.psi[idx]
    }
}
