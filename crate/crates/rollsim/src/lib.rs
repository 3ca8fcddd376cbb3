//! File formats, parameter sweeps, the acceptance suite and the command-line
//! front end for `rollsim-core`.

pub mod acceptance;
pub mod config;
pub mod error;
pub mod report;
pub mod sweep;
pub mod trace;

pub use error::{Error, Result};
