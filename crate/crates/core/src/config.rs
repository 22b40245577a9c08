use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Bounds and knobs shared by the library entry points and the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub max_lattice_size: usize,
    pub max_enumeration: usize,
    /// Largest `|I(A)|` for which `I(A)` itself hosts operator enumeration.
    pub second_level_bound: usize,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_lattice_size: 64,
            max_enumeration: 100_000,
            second_level_bound: 64,
            seed: 0,
            cache_dir: None,
            format: Format::Text,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_lattice_size == 0 || self.max_enumeration == 0 || self.second_level_bound == 0 {
            return Err(Error::BadParameter("bounds must be positive".into()));
        }
        if self.second_level_bound > self.max_enumeration {
            return Err(Error::BadParameter(
                "second-level bound exceeds the enumeration bound".into(),
            ));
        }
        Ok(())
    }

    /// Bounds that affect computed results; part of every cache key.
    pub fn bounds_key(&self) -> String {
        format!(
            "{}-{}-{}-{}",
            self.max_lattice_size, self.max_enumeration, self.second_level_bound, self.seed
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let c = RunConfig::default();
        assert!(c.validate().is_ok());
        assert_eq!(c.max_lattice_size, 64);
        assert_eq!(c.max_enumeration, 100_000);
        assert_eq!(c.second_level_bound, 64);
    }

    #[test]
    fn rejects_bad_bounds() {
        let c = RunConfig {
            second_level_bound: 0,
            ..RunConfig::default()
        };
        assert!(c.validate().is_err());
        let c = RunConfig {
            second_level_bound: 10,
            max_enumeration: 5,
            ..RunConfig::default()
        };
        assert!(c.validate().is_err());
    }
}
