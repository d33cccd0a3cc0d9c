use crate::scalar::Real;

/// Trapezoidal rule on a (possibly non-uniform) grid.
pub fn trapezoid<T: Real>(times: &[T], values: &[T]) -> T {
    debug_assert_eq!(times.len(), values.len());
    times
        .windows(2)
        .zip(values.windows(2))
        .fold(T::zero(), |s, (t, v)| s + (t[1] - t[0]) * (v[0] + v[1]) * T::lit(0.5))
}
