//! IO companion to `isokit-core`: file formats, report emission, and the
//! benchmark harness backing the `isokit` binary.

pub mod bench;
pub mod formats;
pub mod report;
