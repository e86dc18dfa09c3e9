//! Library surface of the `geophase` CLI: output records and formats, the
//! command implementations, and the invariant suite. The binary in `main.rs`
//! is a thin argument-parsing layer over these.

pub mod checks;
pub mod commands;
pub mod records;
