//! Library half of the `ncomm` command-line tool: expression parsing,
//! reproducible samplers, the named check registry, and report rendering.
//!
//! The binary in `main.rs` is a thin argument-handling layer over these
//! modules; integration tests drive them directly.

pub mod checks;
pub mod parse;
pub mod report;
pub mod sample;
