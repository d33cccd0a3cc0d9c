use crate::error::Result;
use crate::scalar::Real;
use crate::system::System;

/// Classical fourth-order Runge–Kutta step. Reference solutions only.
pub fn rk4_step<T: Real>(system: &System<T>, psi: &[T], h: T) -> Result<Vec<T>> {
    let half = T::lit(0.5);
    let axpy = |x: &[T], k: &[T], s: T| -> Vec<T> { x.iter().zip(k).map(|(&a, &b)| a + s * b).collect() };
    let k1 = system.rhs_slice(psi)?;
    let k2 = system.rhs_slice(&axpy(psi, &k1, half * h))?;
    let k3 = system.rhs_slice(&axpy(psi, &k2, half * h))?;
    let k4 = system.rhs_slice(&axpy(psi, &k3, h))?;
    let sixth = h / T::lit(6.0);
    Ok(psi
        .iter()
        .enumerate()
        .map(|(n, &x)| x + sixth * (k1[n] + T::lit(2.0) * (k2[n] + k3[n]) + k4[n]))
        .collect())
}
