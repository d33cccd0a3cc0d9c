//! Scalar abstraction shared by every floating-point routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the kinetics, system and integrator are generic over.
///
/// Implemented for `f32` and `f64`. Exact certification of hypotheses runs in
/// [`crate::Exact`] instead.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal, rounding to the nearest representable value.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("every finite f64 maps to a Real")
    }

    /// Converts a cluster size or count.
    fn from_index(i: usize) -> Self {
        Self::from_usize(i).expect("index representable")
    }

    /// Lossy view used for reports and diagnostics.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
