//! Brute-force difference-set enumeration on small groups and parameter
//! sweeps over the three-valued cases.

mod enumerate;
mod sweep;

pub use enumerate::{enumerate_difference_sets, expand_translates, find_three_valued, EnumSpec, ThreeValuedInstance};
pub use sweep::{
    csv_header, csv_record, sweep, sweep_with, Checkpoint, SweepCase, SweepHit, SweepSpec, SweepSummary,
};
