use core::fmt;

use crate::state::RollState;

/// Parameter or configuration validation failure. `key` names the offending
/// field exactly as it appears in the config files.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub key: &'static str,
    pub reason: &'static str,
}

impl ConfigError {
    pub const fn new(key: &'static str, reason: &'static str) -> Self {
        Self { key, reason }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid `{}`: {}", self.key, self.reason)
    }
}

/// The plant produced a non-finite derivative.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    Blowup { quantity: &'static str, state: RollState },
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Blowup { quantity, state } => {
                write!(f, "non-finite {quantity} at phi={}, phi_dot={}", state.phi, state.phi_dot)
            }
        }
    }
}

impl core::error::Error for ConfigError {}
impl core::error::Error for ModelError {}
