//! Flat `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Keys use the long
//! flag names with `-` or `_` (`t-start` and `t_start` are the same key).
//! Unknown keys are rejected.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::error::ConfigError;

pub const KNOWN_KEYS: &[&str] = &[
    "omega",
    "coupling",
    "temperature",
    "convention",
    "var",
    "scale",
    "start",
    "stop",
    "points",
    "t_start",
    "t_stop",
    "t_points",
    "t_scale",
    "c_start",
    "c_stop",
    "c_points",
    "c_scale",
    "preset",
    "oracle",
    "samples",
    "refine",
    "seed",
    "output",
    "threads",
    "mass",
    "d",
    "d_prime",
    "g",
];

fn normalize(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('-', "_")
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::new(
                    "config",
                    format!("line {}: expected `key = value`", n + 1),
                ));
            };
            let key = normalize(key);
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(ConfigError::new(key, "unknown configuration key"));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("config", format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Flag value if given, otherwise the parsed config value.
    pub fn get<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, ConfigError>
    where
        T: FromStr,
        T::Err: Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        self.raw(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| ConfigError::new(key, format!("`{v}`: {e}")))
            })
            .transpose()
    }

    pub fn require<T>(&self, flag: Option<T>, key: &str) -> Result<T, ConfigError>
    where
        T: FromStr,
        T::Err: Display,
    {
        self.get(flag, key)?
            .ok_or_else(|| ConfigError::new(key, "missing (pass the flag or set it in --config)"))
    }

    pub fn get_or<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, ConfigError>
    where
        T: FromStr,
        T::Err: Display,
    {
        Ok(self.get(flag, key)?.unwrap_or(default))
    }
}
