//! `key = value` settings files.
//!
//! Blank lines and lines starting with `#` are ignored. Keys are the long
//! flag names (`corpus`, `model`, `seed`, `jobs`, `t`, `mode`, `min-length`,
//! `stopwords`, `thresholds`). A flag given on the command line always wins.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};

pub const ENV_VAR: &str = "ACROMINE_CONFIG";

const KEYS: [&str; 9] = ["corpus", "model", "seed", "jobs", "t", "mode", "min-length", "stopwords", "thresholds"];

#[derive(Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
    origin: Option<PathBuf>,
}

impl Config {
    pub fn parse(text: &str, origin: Option<&Path>) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("config line {}: expected key = value", n + 1);
            };
            let key = key.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                bail!("config line {}: unknown key {key:?}", n + 1);
            }
            values.insert(key, value.trim().to_owned());
        }
        Ok(Config { values, origin: origin.map(Path::to_owned) })
    }

    /// The file named by `--config`, else by the environment, else nothing.
    pub fn load(flag: Option<&Path>) -> Result<Self> {
        let path = match flag {
            Some(p) => p.to_owned(),
            None => match std::env::var_os(ENV_VAR) {
                Some(p) if !p.is_empty() => PathBuf::from(p),
                _ => return Ok(Config::default()),
            },
        };
        let text = std::fs::read_to_string(&path).with_context(|| format!("cannot read config {}", path.display()))?;
        Config::parse(&text, Some(&path)).with_context(|| format!("in {}", path.display()))
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|e| anyhow::anyhow!("config key {key}: {e}")),
        }
    }

    /// Relative paths resolve against the config file's directory.
    pub fn path(&self, key: &str) -> Option<PathBuf> {
        let raw = PathBuf::from(self.values.get(key)?);
        match self.origin.as_deref().and_then(Path::parent) {
            Some(dir) if raw.is_relative() => Some(dir.join(raw)),
            _ => Some(raw),
        }
    }
}

/// `flag`, else the config value, else `default`.
pub fn pick<T: FromStr>(flag: Option<T>, config: &Config, key: &str, default: T) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    Ok(match flag {
        Some(v) => v,
        None => config.get(key)?.unwrap_or(default),
    })
}
