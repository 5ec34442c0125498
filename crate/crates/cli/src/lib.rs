//! File formats, built-in fixtures and the benchmark harness behind the
//! `cogcomp` binary.

pub mod bench;
pub mod fixtures;
pub mod io;
