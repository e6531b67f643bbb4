//! Command-line front end for `mdeg-core`.

pub mod args;
pub mod commands;
pub mod session;
