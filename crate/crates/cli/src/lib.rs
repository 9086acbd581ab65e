//! Scenario runner: named presets, flat config files, CSV and manifest output.

pub mod config;
pub mod error;
pub mod output;
pub mod params;
pub mod presets;
pub mod runner;
mod scenarios;

pub use config::ScenarioConfig;
pub use error::{CliError, CliResult};
pub use output::{Outcome, Table};
pub use params::{ParamSet, Value};
pub use presets::{find_preset, list_presets, presets, Kind, Preset};
pub use runner::{resolve, run_scenario, simulate, RunReport};
