//! Exact arithmetic: cyclotomic integers, quadratic fields, and elementary
//! number-theoretic predicates.

mod cyclo;
pub mod predicates;
mod quad;
mod recognize;

pub use cyclo::{cyclotomic_polynomial, unit_group, CycloInt};
pub use predicates::{is_perfect_square, legendre, ord_p, perfect_square_root, prime_set};
pub(crate) use quad::exact_quotient;
pub use quad::{quad_divides, QuadInt, QuadRecord};
pub use recognize::{recognize_quadratic, sqrt_element, Recognition};
