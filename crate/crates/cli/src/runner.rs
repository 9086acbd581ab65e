use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::config::ScenarioConfig;
use crate::error::{config_err, CliResult};
use crate::output::{sha256_hex, write_manifest, Outcome};
use crate::params::ParamSet;
use crate::presets::{find_preset, Preset};
use crate::scenarios::simulate_kind;

/// Result of one scenario: the computed tables plus what was written.
#[derive(Debug)]
pub struct RunReport {
    pub preset: &'static Preset,
    pub params: ParamSet,
    pub outcome: Outcome,
    pub files: Vec<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn config_hash(&self) -> String {
        sha256_hex(&self.params.canonical())
    }
}

pub fn resolve(preset: &str, overrides: &[(String, String)]) -> CliResult<(&'static Preset, ParamSet)> {
    let preset = find_preset(preset)?;
    let mut params = preset.params();
    for (k, v) in overrides {
        params.set(k, v)?;
    }
    Ok((preset, params))
}

/// Compute a preset in memory without touching the filesystem.
pub fn simulate(preset: &str, overrides: &[(&str, &str)]) -> CliResult<Outcome> {
    let owned: Vec<(String, String)> =
        overrides.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    let (preset, params) = resolve(preset, &owned)?;
    simulate_kind(preset.kind, &params)
}

/// Resolve, simulate, and write CSVs plus `manifest.txt` when an output
/// directory is configured.
pub fn run_scenario(cfg: &ScenarioConfig) -> CliResult<RunReport> {
    let (preset, params) = resolve(&cfg.preset, &cfg.overrides)?;
    let start = Instant::now();
    let outcome = simulate_kind(preset.kind, &params)?;
    let wall_time_s = start.elapsed().as_secs_f64();
    let mut report =
        RunReport { preset, params, outcome, files: Vec::new(), manifest: None, wall_time_s };
    if let Some(dir) = &cfg.output_dir {
        write_outputs(&mut report, dir)?;
    }
    Ok(report)
}

fn write_outputs(report: &mut RunReport, dir: &Path) -> CliResult<()> {
    if dir.exists() && !dir.is_dir() {
        return Err(config_err(format!("output path {} is not a directory", dir.display())));
    }
    fs::create_dir_all(dir)?;
    for t in &report.outcome.tables {
        report.files.push(t.write(dir)?);
    }
    let header = [
        ("preset", report.preset.name.to_owned()),
        ("anchor", report.preset.anchor.to_owned()),
        ("crate_version", env!("CARGO_PKG_VERSION").to_owned()),
    ];
    report.manifest = Some(write_manifest(
        dir,
        &header,
        &report.params.canonical(),
        &report.outcome,
        &report.files,
        report.wall_time_s,
    )?);
    Ok(())
}
