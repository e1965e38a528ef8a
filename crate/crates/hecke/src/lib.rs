//! Command-line front end, JSON formats and parallel drivers for `hecke-core`.

pub mod cli;
pub mod golden;
pub mod io;
pub mod parallel;
pub mod report;
