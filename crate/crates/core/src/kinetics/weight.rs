use crate::error::{Error, Result};
use crate::scalar::Real;

/// Superlinear weight `G₀` controlling the tail of the initial data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightRule<T> {
    /// `G₀(z) = z^m`, `m ∈ (1, 2]`.
    Power(T),
    /// `G₀(z) = z [ln(e^{m−1} + z)]^m`, `m > 1`.
    LogPower(T),
}

/// A weight function `G₀` together with `G₁ = G₀ / z` and `G₁′` in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightFunction<T> {
    rule: WeightRule<T>,
}

impl<T: Real> WeightFunction<T> {
    pub fn power(m: T) -> Result<Self> {
        if !(m > T::one() && m <= T::lit(2.0)) {
            return Err(Error::Argument(format!("power weight needs m in (1, 2], got {m}")));
        }
        Ok(Self { rule: WeightRule::Power(m) })
    }

    pub fn log_power(m: T) -> Result<Self> {
        if !(m > T::one()) || !m.is_finite() {
            return Err(Error::Argument(format!("log-power weight needs m > 1, got {m}")));
        }
        Ok(Self { rule: WeightRule::LogPower(m) })
    }

    pub fn rule(&self) -> WeightRule<T> {
        self.rule
    }

    pub fn name(&self) -> String {
        match self.rule {
            WeightRule::Power(m) => format!("power(m={m})"),
            WeightRule::LogPower(m) => format!("log_power(m={m})"),
        }
    }

    fn log_shift(m: T) -> T {
        (m - T::one()).exp()
    }

    pub fn g0(&self, z: T) -> T {
        if z == T::zero() {
            return T::zero();
        }
        match self.rule {
            WeightRule::Power(m) => z.powf(m),
            WeightRule::LogPower(m) => z * (Self::log_shift(m) + z).ln().powf(m),
        }
    }

    /// `G₁(z) = G₀(z) / z`, with `G₁(0) = 0`.
    pub fn g1(&self, z: T) -> T {
        if z == T::zero() {
            return T::zero();
        }
        match self.rule {
            WeightRule::Power(m) => z.powf(m - T::one()),
            WeightRule::LogPower(m) => (Self::log_shift(m) + z).ln().powf(m),
        }
    }

    /// `G₁′(z)` for `z > 0`.
    pub fn g1_prime(&self, z: T) -> T {
        match self.rule {
            WeightRule::Power(m) => (m - T::one()) * z.powf(m - T::lit(2.0)),
            WeightRule::LogPower(m) => {
                let a = Self::log_shift(m) + z;
                m * a.ln().powf(m - T::one()) / a
            }
        }
    }

    /// `z G₁′(z)`, which diverges for every member of the class.
    pub fn z_g1_prime(&self, z: T) -> T {
        z * self.g1_prime(z)
    }

    /// `inf_{z ≥ m} z G₁′(z)`. Both families have `z G₁′(z)` non-decreasing on
    /// `(0, ∞)`, so the infimum sits at `z = m`.
    pub fn inf_z_g1_prime_from(&self, m: T) -> T {
        self.z_g1_prime(m)
    }

    /// Closed-form statement of why `z G₁′(z) → ∞` for this family.
    pub fn divergence_note(&self) -> String {
        match self.rule {
            WeightRule::Power(m) => format!("z G1'(z) = {} z^{}", m - T::one(), m - T::one()),
            WeightRule::LogPower(m) => {
                format!("z G1'(z) = {m} z ln(e^{} + z)^{} / (e^{} + z)", m - T::one(), m - T::one(), m - T::one())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_two_closed_forms() {
        let g = WeightFunction::power(2.0).unwrap();
        assert_eq!(g.g0(3.0), 9.0);
        assert_eq!(g.g1(3.0), 3.0);
        assert_eq!(g.g1_prime(7.0), 1.0);
        assert_eq!(g.z_g1_prime(5.0), 5.0);
        assert_eq!(g.g1(0.0), 0.0);
    }

    #[test]
    fn log_power_derivative_matches_finite_difference() {
        let g = WeightFunction::log_power(2.0).unwrap();
        for &z in &[0.5, 1.0, 10.0, 1e3] {
            let h = 1e-5 * z;
            let fd: f64 = (g.g1(z + h) - g.g1(z - h)) / (2.0 * h);
            assert!((fd - g.g1_prime(z)).abs() <= 1e-8 * fd.abs(), "z = {z}");
        }
    }

    #[test]
    fn parameter_ranges() {
        assert!(WeightFunction::power(1.0).is_err());
        assert!(WeightFunction::power(2.5).is_err());
        assert!(WeightFunction::log_power(1.0).is_err());
        assert!(WeightFunction::log_power(3.0).is_ok());
    }
}
