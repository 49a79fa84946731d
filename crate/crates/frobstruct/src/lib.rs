//! File formats, command line and exhaustive self-test for
//! [`frobstruct_core`].

pub mod cli;
pub mod json;
pub mod selftest;

pub use cli::run;
pub use frobstruct_core;
