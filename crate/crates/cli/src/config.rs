//! `--config` files: one `key = value` per line, keys named after the long
//! flags. Blank lines and lines starting with `#` are skipped.

use std::collections::BTreeMap;

use thiserror::Error;

pub const KNOWN_KEYS: &[&str] = &[
    "family", "alpha", "a", "alpha1", "alpha2", "c1", "c2", "mu", "hurst", "sigma2", "t", "s", "v", "kappa", "m",
    "t-start", "t-stop", "t-count", "spacing", "s-values", "output", "quantity", "reps", "seed", "dt",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("config line {line}: expected key = value")]
    Syntax { line: usize },
    #[error("config line {line}: unknown key '{key}'")]
    UnknownKey { line: usize, key: String },
    #[error("config line {line}: key '{key}' given twice")]
    Duplicate { line: usize, key: String },
    #[error("config key '{key}': cannot parse '{value}'")]
    BadValue { key: String, value: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigMap(BTreeMap<String, String>);

impl ConfigMap {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Typed lookup; a present but unparsable value is an error.
    pub fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| ConfigError::BadValue { key: key.to_string(), value: v.to_string() }),
        }
    }
}

pub fn parse_config(text: &str) -> Result<ConfigMap, ConfigError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(ConfigError::Syntax { line: i + 1 });
        };
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(ConfigError::Syntax { line: i + 1 });
        }
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(ConfigError::UnknownKey { line: i + 1, key });
        }
        if map.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(ConfigError::Duplicate { line: i + 1, key });
        }
    }
    Ok(ConfigMap(map))
}
