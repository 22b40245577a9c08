//! On-disk cache of JSON results keyed by lattice digest, operation and
//! bounds. Entries carry the host's order table, which is compared on load so
//! a digest collision can never return a foreign result.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::Result;
use crate::lattice::FiniteLattice;

pub const ENV_VAR: &str = "IDIOMLAB_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    labels: Vec<String>,
    order: Vec<bool>,
    value: T,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// The environment variable wins over the configured directory. Caching
    /// is off when neither is set.
    pub fn from_config(cfg: &RunConfig) -> Option<Self> {
        match std::env::var_os(ENV_VAR) {
            Some(dir) if !dir.is_empty() => Some(Cache::new(dir)),
            _ => cfg.cache_dir.as_ref().map(Cache::new),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, lat: &FiniteLattice, op: &str, cfg: &RunConfig) -> PathBuf {
        self.dir.join(format!(
            "{}-{}-{}.json",
            lat.digest().to_hex(),
            op,
            cfg.bounds_key()
        ))
    }

    /// A cached value, if present and recorded for this exact lattice.
    /// Unreadable or mismatched entries count as misses.
    pub fn load<T: DeserializeOwned>(
        &self,
        lat: &FiniteLattice,
        op: &str,
        cfg: &RunConfig,
    ) -> Option<T> {
        let text = fs::read_to_string(self.path(lat, op, cfg)).ok()?;
        let entry: Entry<T> = serde_json::from_str(&text).ok()?;
        (entry.labels == lat.labels() && entry.order == lat.order_table()).then_some(entry.value)
    }

    pub fn store<T: Serialize>(
        &self,
        lat: &FiniteLattice,
        op: &str,
        cfg: &RunConfig,
        value: &T,
    ) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = Entry {
            labels: lat.labels().to_vec(),
            order: lat.order_table().to_vec(),
            value,
        };
        let path = self.path(lat, op, cfg);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(&entry)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    pub fn get_or_compute<T, F>(
        &self,
        lat: &FiniteLattice,
        op: &str,
        cfg: &RunConfig,
        compute: F,
    ) -> Result<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        if let Some(v) = self.load(lat, op, cfg) {
            return Ok(v);
        }
        let v = compute()?;
        self.store(lat, op, cfg, &v)?;
        Ok(v)
    }
}
