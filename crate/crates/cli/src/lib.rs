//! Problem-file parsing and run reports for the `tcc` binary.

pub mod problem;
pub mod report;
