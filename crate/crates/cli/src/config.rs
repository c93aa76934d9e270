//! Flat `key = value` experiment configuration.
//!
//! Blank lines and `#` comments are ignored. Recognised keys:
//! `hosts`, `hash_functions`, `switches`, `headers`, `attackers`, `packets`,
//! `tau`, `runs`, `seed`, `pool_size`, `p_unique`. Anything left out keeps
//! its default.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use ams_detect::TrialConfig;

use crate::error::{HarnessError, Result};

pub const KEYS: [&str; 11] = [
    "hosts",
    "hash_functions",
    "switches",
    "headers",
    "attackers",
    "packets",
    "tau",
    "runs",
    "seed",
    "pool_size",
    "p_unique",
];

pub fn load_config(path: &Path) -> Result<TrialConfig> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text, path)
}

pub fn parse_config(text: &str, origin: &Path) -> Result<TrialConfig> {
    let mut config = TrialConfig::default();
    let mut seen = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| HarnessError::Parse {
            path: PathBuf::from(origin),
            line,
            message,
        };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(err(format!("unknown key `{key}`")));
        }
        if !seen.insert(key) {
            return Err(err(format!("duplicate key `{key}`")));
        }
        apply(&mut config, key, value).map_err(err)?;
    }
    validate(&config)?;
    Ok(config)
}

fn parse<T: FromStr>(key: &str, value: &str) -> std::result::Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("invalid value `{value}` for `{key}`"))
}

/// Sets one named field. Used for config-file lines and CLI overrides alike.
pub fn apply(config: &mut TrialConfig, key: &str, value: &str) -> std::result::Result<(), String> {
    match key {
        "hosts" => config.num_hosts = parse(key, value)?,
        "hash_functions" => config.depth = parse(key, value)?,
        "switches" => config.num_switches = parse(key, value)?,
        "headers" => config.num_headers = parse(key, value)?,
        "attackers" => config.num_attackers = parse(key, value)?,
        "packets" => config.packets = parse(key, value)?,
        "tau" => config.tau = Some(parse(key, value)?),
        "runs" => config.runs = parse(key, value)?,
        "seed" => config.master_seed = parse(key, value)?,
        "pool_size" => config.pool_size = Some(parse(key, value)?),
        "p_unique" => config.p_unique = parse(key, value)?,
        _ => return Err(format!("unknown key `{key}`")),
    }
    Ok(())
}

/// Checks the config invariants and names the one that failed.
pub fn validate(config: &TrialConfig) -> Result<()> {
    config.validate().map_err(|e| match e {
        ams_detect::Error::InvalidConfig(msg) => HarnessError::Invalid(msg.to_string()),
        other => HarnessError::Invalid(other.to_string()),
    })
}
