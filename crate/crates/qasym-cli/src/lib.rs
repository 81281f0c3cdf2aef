//! Support library for the `qasym` binary: sweep execution and table/mesh
//! serialization. Kept as a library so integration tests can drive the same
//! code paths the binary uses.

pub mod emit;
pub mod jobs;
