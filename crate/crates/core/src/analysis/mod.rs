//! A priori estimates evaluated as computable bounds, and the verification
//! experiments that check them along trajectories.

mod bounds;
mod gronwall;
mod longtime;
mod monitors;
mod quadrature;
mod tails;

pub use bounds::{compute_bounds, BoundsReport};
pub use gronwall::{gronwall_experiment, DistanceSeries};
pub use longtime::{longtime_report, LongTimeReport};
pub use monitors::{G0BoundMonitor, MassDriftMonitor, NumberGrowthMonitor, TailMonitor};
pub use quadrature::trapezoid;
pub use tails::{
    check_g0_moment_bound, check_reaction_bounds, check_tail_dissipation, check_tail_monotonicity, default_slack,
    ReactionBoundEntry, QUADRATURE_SLACK,
};
