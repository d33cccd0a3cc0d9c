//! Summation with a fixed, documented order.

use crate::scalar::Real;

/// How accumulations inside the vector field are carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Summation {
    /// Plain left-to-right accumulation in ascending index order.
    #[default]
    Ordered,
    /// Neumaier-compensated accumulation in the same order.
    Compensated,
}

/// Running sum honouring a [`Summation`] mode.
#[derive(Debug, Clone, Copy)]
pub struct Accumulator<T> {
    sum: T,
    carry: T,
    mode: Summation,
}

impl<T: Real> Accumulator<T> {
    pub fn new(mode: Summation) -> Self {
        Self { sum: T::zero(), carry: T::zero(), mode }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        match self.mode {
            Summation::Ordered => self.sum += x,
            Summation::Compensated => {
                let t = self.sum + x;
                if self.sum.abs() >= x.abs() {
                    self.carry += (self.sum - t) + x;
                } else {
                    self.carry += (x - t) + self.sum;
                }
                self.sum = t;
            }
        }
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

/// Ascending-order sum of a slice.
pub fn ordered_sum<T: Real>(xs: &[T]) -> T {
    xs.iter().fold(T::zero(), |acc, &x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_recovers_lost_bits() {
        let xs = [1.0f64, 1e-16, 1e-16, 1e-16, 1e-16, -1.0];
        let mut plain = Accumulator::new(Summation::Ordered);
        let mut comp = Accumulator::new(Summation::Compensated);
        for &x in &xs {
            plain.add(x);
            comp.add(x);
        }
        assert_eq!(plain.value(), 0.0);
        assert!((comp.value() - 4e-16).abs() < 1e-30);
    }
}
