//! Command-line front end for `hankel-core`: coefficient tables, bound
//! reports, Monte-Carlo verification, extremal search and grid export.

pub mod cli;
pub mod config;
pub mod format;
pub mod grid;
pub mod manifest;
pub mod report;
pub mod verify;
