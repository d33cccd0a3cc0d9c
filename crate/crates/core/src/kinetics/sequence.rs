use crate::error::{Error, Result};
use crate::kinetics::ValidationReport;
use crate::scalar::Real;

/// How a weight sequence produces its values.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceRule<T> {
    /// `Λ_i = scale · i^exponent`.
    Power { scale: T, exponent: T },
    /// Explicit `Λ_1..Λ_n`; continued for `i > n` by `Λ_i = Λ_n · i / n`.
    Values(Vec<T>),
}

/// Non-negative weight sequence `(Λ_i)`, used for tail moments, the
/// Λ-domination of kernels and the uniqueness distance.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence<T> {
    rule: SequenceRule<T>,
}

impl<T: Real> WeightSequence<T> {
    pub fn power(scale: T, exponent: T) -> Result<Self> {
        if !(scale >= T::zero()) || !scale.is_finite() || !exponent.is_finite() {
            return Err(Error::Argument(format!("bad power sequence {scale}·i^{exponent}")));
        }
        Ok(Self { rule: SequenceRule::Power { scale, exponent } })
    }

    /// `Λ_i = i^exponent`.
    pub fn monomial(exponent: T) -> Result<Self> {
        Self::power(T::one(), exponent)
    }

    pub fn values(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Argument("empty weight sequence".into()));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !(**v >= T::zero()) || !v.is_finite()) {
            return Err(Error::Argument(format!("Λ_{} = {v} is not a finite non-negative value", i + 1)));
        }
        Ok(Self { rule: SequenceRule::Values(values) })
    }

    pub fn rule(&self) -> &SequenceRule<T> {
        &self.rule
    }

    /// `Λ_i` for `i ≥ 1`.
    pub fn get(&self, i: usize) -> T {
        debug_assert!(i >= 1);
        match &self.rule {
            SequenceRule::Power { scale, exponent } => *scale * T::from_index(i).powf(*exponent),
            SequenceRule::Values(v) => {
                if i <= v.len() {
                    v[i - 1]
                } else {
                    let n = v.len();
                    v[n - 1] * T::from_index(i) / T::from_index(n)
                }
            }
        }
    }

    /// `Λ_1..Λ_p`.
    pub fn take(&self, p: usize) -> Vec<T> {
        (1..=p).map(|i| self.get(i)).collect()
    }

    pub fn first_at_least_one(&self) -> bool {
        self.get(1) >= T::one()
    }

    /// Checks over `1..=p` that `Λ_i ≥ 0`, that `Λ_i / i` and `Λ_i² / i` are
    /// non-decreasing, and, when `require_first_at_least_one`, that `Λ_1 ≥ 1`.
    pub fn validate(&self, p: usize, require_first_at_least_one: bool) -> ValidationReport {
        let mut report = ValidationReport::new("weight sequence");
        let lam = self.take(p);
        let tol = 1e-12;
        for (idx, &l) in lam.iter().enumerate() {
            report.record(l.as_f64(), || format!("Λ_{} = {l} < 0", idx + 1));
        }
        for i in 1..p {
            let (a, b) = (lam[i - 1], lam[i]);
            let ratio_lo = a.as_f64() / i as f64;
            let ratio_hi = b.as_f64() / (i + 1) as f64;
            report.record(ratio_hi - ratio_lo + tol * ratio_hi.abs().max(ratio_lo.abs()), || {
                format!("Λ_i/i decreases between i = {i} and {}", i + 1)
            });
            let sq_lo = a.as_f64().powi(2) / i as f64;
            let sq_hi = b.as_f64().powi(2) / (i + 1) as f64;
            report.record(sq_hi - sq_lo + tol * sq_hi.abs().max(sq_lo.abs()), || {
                format!("Λ_i²/i decreases between i = {i} and {}", i + 1)
            });
        }
        if require_first_at_least_one {
            let first = lam.first().copied().unwrap_or_else(T::zero).as_f64();
            report.record(first - 1.0, || format!("Λ_1 = {first} < 1"));
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_sequence_values() {
        let s = WeightSequence::monomial(2.0).unwrap();
        assert_eq!(s.take(4), vec![1.0, 4.0, 9.0, 16.0]);
        assert!(s.first_at_least_one());
        assert!(s.validate(50, true).certified);
    }

    #[test]
    fn sublinear_sequences_fail_monotone_ratio() {
        let s = WeightSequence::monomial(0.5).unwrap();
        let r = s.validate(10, false);
        assert!(!r.certified);
        assert!(r.counterexample.unwrap().contains("Λ_i/i"));
    }

    #[test]
    fn explicit_values_extend_linearly() {
        let s = WeightSequence::values(vec![1.0, 2.0, 6.0]).unwrap();
        assert_eq!(s.get(6), 12.0);
        assert!(s.validate(10, true).certified);
        assert!(WeightSequence::values(vec![1.0, -2.0]).is_err());
    }

    #[test]
    fn small_first_value_flagged() {
        let s = WeightSequence::power(0.5, 1.0).unwrap();
        assert!(!s.first_at_least_one());
        assert!(!s.validate(5, true).certified);
        assert!(s.validate(5, false).certified);
    }
}
