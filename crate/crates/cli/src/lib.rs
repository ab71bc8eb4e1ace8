//! Parameter sweeps over the `jchm-core` solvers, written as CSV with a JSON
//! metadata sidecar.
//!
//! A sweep is described by a [`SweepConfig`]. Values come from the command's
//! defaults, then an optional JSON file, then `--set key=value` overrides.
//! Every output row carries either all of its values or an error message, so
//! a single failing point never aborts a sweep.
//!
//! Exit codes: `0` success, `2` invalid configuration or usage, `3` solver
//! failure that prevents the whole sweep, `4` I/O failure.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::Serialize;

pub mod commands;
pub mod config;
mod error;
pub mod table;

pub use config::{Command, FixedParams, Range, SweepConfig};
pub use error::CliError;
pub use table::{Cell, Row, Table};

#[derive(Debug, Parser)]
#[command(
    name = "jchm",
    version,
    about = "Mean-field sweeps of the Jaynes-Cummings-Hubbard and Dicke models"
)]
pub struct Args {
    /// What to compute.
    #[arg(value_enum)]
    pub command: Command,
    /// JSON sweep configuration.
    #[arg(long, short)]
    pub config: Option<PathBuf>,
    /// Override a configuration key, e.g. `--set params.delta=0.5` or
    /// `--set ranges.J.values=[0.01,0.02]`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub sets: Vec<String>,
    /// Output CSV path. The sidecar is written to `<out>.json`.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Also write a gnuplot script to `<out>.gp`.
    #[arg(long)]
    pub gnuplot: bool,
    /// Print the resolved configuration as JSON and exit.
    #[arg(long)]
    pub print_config: bool,
}

/// Outcome of a successful invocation.
#[derive(Debug)]
pub enum Outcome {
    /// Help, version or resolved configuration to print on stdout.
    Print(String),
    Written(Summary),
}

#[derive(Debug)]
pub struct Summary {
    pub csv: PathBuf,
    pub sidecar: PathBuf,
    pub gnuplot: Option<PathBuf>,
    pub rows: usize,
    pub failed_rows: usize,
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "wrote {} rows ({} failed) to {}",
            self.rows,
            self.failed_rows,
            self.csv.display()
        )
    }
}

#[derive(Serialize)]
struct Sidecar<'a> {
    tool: &'static str,
    version: &'static str,
    core_version: &'static str,
    command: &'static str,
    units: &'static str,
    columns: Vec<&'static str>,
    rows: usize,
    failed_rows: usize,
    tolerances: serde_json::Map<String, serde_json::Value>,
    config: &'a SweepConfig,
}

/// Parses arguments and runs the sweep.
pub fn run<I, T>(args: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Ok(Outcome::Print(e.to_string()))
                }
                _ => {
                    let text = e.render().to_string();
                    let first = text.lines().next().unwrap_or_default();
                    Err(CliError::Config(first.trim_start_matches("error: ").to_string()))
                }
            };
        }
    };
    let mut cfg = SweepConfig::resolve(args.command, args.config.as_deref(), &args.sets)?;
    if args.out.is_some() {
        cfg.out = args.out;
    }
    cfg.gnuplot |= args.gnuplot;
    if args.print_config {
        return Ok(Outcome::Print(
            serde_json::to_string_pretty(&cfg).expect("config serializes"),
        ));
    }
    execute(&cfg).map(Outcome::Written)
}

/// Runs a resolved sweep and writes its outputs.
pub fn execute(cfg: &SweepConfig) -> Result<Summary, CliError> {
    let csv = cfg
        .out
        .clone()
        .ok_or_else(|| CliError::Config("no output path; pass --out or set `out`".into()))?;
    let table = commands::build(cfg)?;

    let mut buf = Vec::new();
    table.write_csv(&mut buf).map_err(|e| CliError::io(&csv, e))?;
    table::write_file(&csv, &buf)?;

    let sidecar = with_suffix(&csv, "json");
    let meta = sidecar_json(cfg, &table);
    table::write_file(&sidecar, meta.as_bytes())?;

    let gnuplot = if cfg.gnuplot {
        let gp = with_suffix(&csv, "gp");
        let name = csv
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        table::write_file(&gp, table.gnuplot_script(&name).as_bytes())?;
        Some(gp)
    } else {
        None
    };
    Ok(Summary {
        csv,
        sidecar,
        gnuplot,
        rows: table.rows.len(),
        failed_rows: table.failed_rows(),
    })
}

fn sidecar_json(cfg: &SweepConfig, table: &Table) -> String {
    let solver = serde_json::to_value(&cfg.solver).expect("solver config serializes");
    let tolerances = commands::tolerance_keys(cfg.command)
        .iter()
        .filter_map(|k| solver.get(*k).map(|v| (k.to_string(), v.clone())))
        .collect();
    let meta = Sidecar {
        tool: "jchm",
        version: env!("CARGO_PKG_VERSION"),
        core_version: jchm_core::VERSION,
        command: cfg.command.name(),
        units: "energies, hoppings and temperatures in units of g; mu and mu_minus_omega_c measured from the cavity frequency",
        columns: table.header(),
        rows: table.rows.len(),
        failed_rows: table.failed_rows(),
        tolerances,
        config: cfg,
    };
    let mut s = serde_json::to_string_pretty(&meta).expect("sidecar serializes");
    s.push('\n');
    s
}

/// `a/b.csv` -> `a/b.csv.<ext>`.
fn with_suffix(path: &Path, ext: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}
