//! Command-line front end: JSON loaders, reports and command dispatch.

pub mod cli;
pub mod io;
pub mod report;
