//! Command-line front end for `qdyb-core`: module specifications, seeded
//! sampling, JSON output and verification suites.

pub mod cli;
pub mod json;
pub mod modules;
pub mod sample;
pub mod suite;
