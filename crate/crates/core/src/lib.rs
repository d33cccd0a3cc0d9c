//! Truncated collision-induced breakage equations: kinetic hypotheses,
//! vector field, implicit time stepping and a priori estimates.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); exact
//! certification of rational kinetics uses [`Exact`]. The aliases below fix
//! the scalar to `f64` or `f32`.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod exact;
pub mod integrator;
pub mod kinetics;
pub mod linalg;
pub mod scalar;
pub mod sum;
pub mod system;

pub use error::{Error, Result};
pub use exact::Exact;
pub use scalar::Real;
pub use sum::Summation;

pub type StateF64 = system::StateVector<f64>;
pub type SystemF64 = system::System<f64>;
pub type SystemConfigF64 = system::SystemConfig<f64>;
pub type TrajectoryF64 = integrator::Trajectory<f64>;
pub type IntegratorConfigF64 = integrator::IntegratorConfig<f64>;
pub type KernelF64 = kinetics::CollisionKernel<f64>;
pub type FragmentsF64 = kinetics::FragmentDistribution<f64>;
pub type WeightF64 = kinetics::WeightFunction<f64>;
pub type LambdaF64 = kinetics::WeightSequence<f64>;

pub type StateF32 = system::StateVector<f32>;
pub type SystemF32 = system::System<f32>;
pub type TrajectoryF32 = integrator::Trajectory<f32>;
pub type IntegratorConfigF32 = integrator::IntegratorConfig<f32>;
