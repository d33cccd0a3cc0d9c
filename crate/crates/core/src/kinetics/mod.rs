//! Kinetic ingredients and the hypotheses they must satisfy.

mod fragment;
mod hypotheses;
mod kernel;
mod report;
mod sequence;
mod weight;

pub use fragment::{xi, xi_real, FragmentDistribution, FragmentRule, FragmentTable, MAX_TABLE_SIZE};
pub use hypotheses::{
    check_weight_class, find_bcond_witness, fragment_count, integer_grid, power_law_constants, validate_lmc1,
    BcondStatus, BcondWitness, Lmc1Entry, Lmc1Mode, Lmc1Report, PowerLawConstants, Residual,
    FLOAT_RELATIVE_TOLERANCE,
};
pub use kernel::{validate_kernel, CollisionKernel, KernelRule};
pub use report::ValidationReport;
pub use sequence::{SequenceRule, WeightSequence};
pub use weight::{WeightFunction, WeightRule};
