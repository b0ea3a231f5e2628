//! Command-line front end for pebblekit: subcommands, run reports, and the
//! verification suites.

pub mod commands;
pub mod exit;
pub mod report;
pub mod suites;
