//! Group-ring arithmetic, difference-set verification, character spectra and
//! the quantities attached to three-valued spectra.

mod audit;
mod io;
mod profile;
mod ring;
mod scheme;
mod spectrum;
mod verify;

pub use audit::{hadamard_family_index, special_case_audit, AuditCheck, AuditReport, Hypotheses};
pub use io::{format_instance, parse_instance, parse_instances};
pub use profile::{
    concrete_profile, quantities, table_one, table_two, three_value_profile, ConcreteProfile,
    ProfileParams, Quantities, RowCheck, RowKey, TableRow, ThreeValueProfile,
};
pub use ring::GroupRingElement;
pub use scheme::{
    determinant, eigenmatrix, fusion_scheme, translation_scheme, Eigenmatrix, FusionScheme,
    IntersectionNumbers,
};
pub use spectrum::{spectrum, OrbitClass, SpectrumReport, SpectrumValue, ThreeValued, ValueKind};
pub use verify::{
    fourier_invert, fourier_invert_map, verify_by_characters, verify_difference_set,
    DifferenceSetVerdict, FourierInversion,
};
