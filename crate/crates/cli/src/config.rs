//! `key = value` config files. Blank lines and `#` comments are ignored;
//! command-line flags take precedence over file values.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    values: BTreeMap<String, (String, usize)>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config { line: line_no, msg: format!("expected key = value, got '{line}'") })?;
            let key = key.trim().replace('_', "-");
            if key.is_empty() {
                return Err(CliError::Config { line: line_no, msg: "empty key".into() });
            }
            if values.insert(key.clone(), (value.trim().to_string(), line_no)).is_some() {
                return Err(CliError::Config { line: line_no, msg: format!("duplicate key '{key}'") });
            }
        }
        Ok(Config { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
        Config::parse(&text)
    }

    /// Typed lookup; `-` and `_` are interchangeable in keys.
    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.values.get(&key.replace('_', "-")) {
            None => Ok(None),
            Some((v, line)) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Config { line: *line, msg: format!("cannot parse '{v}' for '{key}'") }),
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }

    /// Errors on keys outside `known`, naming the offending line.
    pub fn check_keys(&self, known: &[&str]) -> Result<(), CliError> {
        for (key, (_, line)) in &self.values {
            if !known.contains(&key.as_str()) {
                return Err(CliError::Config { line: *line, msg: format!("unknown key '{key}'") });
            }
        }
        Ok(())
    }
}

/// Flag value if given, else config value, else `default`.
pub fn pick<T: FromStr>(flag: Option<T>, cfg: &Config, key: &str, default: T) -> Result<T, CliError> {
    match flag {
        Some(v) => Ok(v),
        None => Ok(cfg.get(key)?.unwrap_or(default)),
    }
}
