//! Command-line front end and HTTP API for the PCM workbench.

pub mod api;
pub mod cli;
pub mod inputs;
pub mod report;
