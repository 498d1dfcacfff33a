//! File formats, run reports and the `frametrace` command line on top of
//! `frametrace-core`.

pub mod cli;
pub mod io;
pub mod report;
