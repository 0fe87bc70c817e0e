//! JSON formats, verification suites and the command-line front end for
//! `bihom-core`.

pub mod cli;
pub mod json;
pub mod report;
pub mod suites;
