//! The guide in `book/`, one module per chapter. Building the docs or
//! running `cargo test -p diffset-guide` executes every example.
#![doc = include_str!("../../../book/src/introduction.md")]

#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}

#[doc = include_str!("../../../book/src/verify.md")]
pub mod verify {}

#[doc = include_str!("../../../book/src/three-valued.md")]
pub mod three_valued {}

#[doc = include_str!("../../../book/src/feasibility.md")]
pub mod feasibility {}

#[doc = include_str!("../../../book/src/search.md")]
pub mod search {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
