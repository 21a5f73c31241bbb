//! Exact computations with difference sets in finite abelian groups:
//! verification, character spectra, the three-valued profile, necessary
//! conditions on parameters, and searches.

pub mod design;
pub mod error;
pub mod feasibility;
pub mod group;
pub mod number;
pub mod search;
mod strings;

pub use error::{Error, Result};
