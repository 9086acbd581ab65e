use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cqed_cli::{list_presets, run_scenario, CliError, CliResult, ScenarioConfig};

#[derive(Parser)]
#[command(name = "cqed-sim", version, about = "Circuit-QED scenario runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a preset or a config file and write CSVs plus manifest.txt.
    Run(RunArgs),
    /// Print every preset with its anchor.
    ListPresets,
}

#[derive(Args)]
struct RunArgs {
    /// Config file with `key = value` lines.
    #[arg(conflicts_with = "preset")]
    config: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    /// Parameter override, repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long = "fock-cutoff", value_name = "N")]
    fock_cutoff: Option<usize>,
    #[arg(long = "tol", value_name = "X")]
    tol: Option<f64>,
}

fn build_config(args: RunArgs) -> CliResult<ScenarioConfig> {
    let mut cfg = match (&args.config, &args.preset) {
        (Some(path), None) => ScenarioConfig::from_file(path)?,
        (None, Some(name)) => ScenarioConfig::new(name.clone()),
        _ => return Err(CliError::Config("give either a config file or --preset".into())),
    };
    for kv in &args.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("--set expects key=value, got '{kv}'")))?;
        cfg.overrides.push((k.trim().to_owned(), v.trim().to_owned()));
    }
    if let Some(n) = args.fock_cutoff {
        cfg.overrides.push(("fock_cutoff".into(), n.to_string()));
    }
    if let Some(x) = args.tol {
        cfg.overrides.push(("rel_tol".into(), format!("{x:e}")));
    }
    if args.out.is_some() {
        cfg.output_dir = args.out;
    }
    if cfg.output_dir.is_none() {
        return Err(CliError::Config("no output directory (--out or output_dir)".into()));
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::ListPresets => {
            print!("{}", list_presets());
            Ok(())
        }
        Command::Run(args) => build_config(args).and_then(|cfg| run_scenario(&cfg)).map(|report| {
            for f in report.files.iter().chain(&report.manifest) {
                println!("{}", f.display());
            }
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
