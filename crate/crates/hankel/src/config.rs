//! `key = value` presets. Command-line flags take precedence.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

const KEYS: [&str; 8] = [
    "seed",
    "samples",
    "budget",
    "refine_iters",
    "step_scale",
    "resolution",
    "lemma_tol",
    "carlson_tol",
];

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("config line {line}: expected key = value")]
    Syntax { line: usize },
    #[error("config line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("config key `{key}`: cannot parse `{value}`")]
    Value { key: String, value: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        text.parse()
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError> {
        self.values
            .get(key)
            .map(|v| {
                v.parse().map_err(|_| ConfigError::Value {
                    key: key.into(),
                    value: v.clone(),
                })
            })
            .transpose()
    }

    /// `flag`, else the config value, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, ConfigError> {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.get(key)?.unwrap_or(default)),
        }
    }
}

impl FromStr for Config {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, ConfigError> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: n + 1 })?;
            let key = k.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                return Err(ConfigError::UnknownKey { line: n + 1, key });
            }
            values.insert(key, v.trim().to_string());
        }
        Ok(Self { values })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_overrides() {
        let c: Config = "# presets\nseed = 11\nbudget=500 # inline\nstep-scale = 0.25\n".parse().unwrap();
        assert_eq!(c.get::<u64>("seed").unwrap(), Some(11));
        assert_eq!(c.pick(Some(3u64), "seed", 0).unwrap(), 3);
        assert_eq!(c.pick(None, "budget", 1u64).unwrap(), 500);
        assert_eq!(c.pick(None, "samples", 9u64).unwrap(), 9);
        assert_eq!(c.get::<f64>("step_scale").unwrap(), Some(0.25));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!("nonsense".parse::<Config>(), Err(ConfigError::Syntax { line: 1 })));
        assert!(matches!("colour = red".parse::<Config>(), Err(ConfigError::UnknownKey { .. })));
        let c: Config = "seed = x".parse().unwrap();
        assert!(c.get::<u64>("seed").is_err());
    }
}
