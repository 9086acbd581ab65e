use std::path::{Path, PathBuf};

use crate::error::{config_err, CliResult};

/// One scenario invocation: a preset, flat overrides and an output directory.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScenarioConfig {
    pub preset: String,
    /// Overrides in file order.
    pub overrides: Vec<(String, String)>,
    pub output_dir: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn new(preset: impl Into<String>) -> Self {
        Self { preset: preset.into(), ..Default::default() }
    }

    pub fn with(mut self, key: &str, value: &str) -> Self {
        self.overrides.push((key.to_owned(), value.to_owned()));
        self
    }

    /// Flat `key = value` text with `#` comments. `preset` selects the
    /// base scenario, `output_dir` the destination; every other key is a
    /// parameter override.
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut cfg = Self::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| config_err(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() {
                return Err(config_err(format!("line {}: empty key", lineno + 1)));
            }
            match key {
                "preset" => cfg.preset = value.to_owned(),
                "output_dir" => cfg.output_dir = Some(PathBuf::from(value)),
                _ => cfg.overrides.push((key.to_owned(), value.to_owned())),
            }
        }
        if cfg.preset.is_empty() {
            return Err(config_err("config does not name a preset"));
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}
