//! Optional `key=value` pipeline configuration file.
//!
//! ```text
//! # rxd.conf
//! ids = data/ids_fixture.txt
//! region = G,T
//! level = 3
//! boundary = prefix
//! threshold = 0.85
//! ```
//!
//! Command-line flags always win over values from the file.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::error::CliError;

pub const KEYS: &[&str] = &[
    "ids",
    "region",
    "level",
    "emit_operators",
    "boundary",
    "delimiter",
    "top_n",
    "top_n_word",
    "top_n_char",
    "top_n_radical",
    "threshold",
    "min_freq",
    "replication",
    "decomp_level",
    "keep_plain",
    "zh_side",
    "max_n",
    "lc",
    "jobs",
    "skip_malformed",
];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PipelineConfig {
    values: BTreeMap<String, String>,
}

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        text.parse()
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Parses `key` if present.
    pub fn get<T>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        self.raw(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| CliError::Usage(format!("config key {key}: invalid value {v:?}: {e}")))
            })
            .transpose()
    }

    /// Flag value, else config value, else default.
    pub fn resolve<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.get(key)?.unwrap_or(default)),
        }
    }
}

impl FromStr for PipelineConfig {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
            let key = key.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!("config line {}: unknown key {key:?}", i + 1)));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(PipelineConfig { values })
    }
}
