//! Experiment runner for the `ddf-core` solver: config parsing, presets,
//! measurements and artifact output.

pub mod config;
pub mod error;
pub mod experiment;
pub mod output;
pub mod presets;

use std::path::{Path, PathBuf};

pub use config::{parse_config, ExperimentConfig};
pub use error::{CliError, CliResult};
pub use experiment::{execute, Report};

/// `run.outdir` if set, otherwise `out/<name>`.
pub fn default_outdir(cfg: &ExperimentConfig) -> PathBuf {
    cfg.run
        .outdir
        .clone()
        .unwrap_or_else(|| Path::new("out").join(&cfg.name))
}

/// Runs `cfg`, writes its artifacts into `dir` and turns failed in-loop
/// checks into an error after the files are on disk.
pub fn run_to_dir(cfg: &ExperimentConfig, dir: &Path) -> CliResult<(Report, Vec<PathBuf>)> {
    output::ensure_dir(dir)?;
    let report = execute(cfg)?;
    let files = output::write_report(&report, dir, cfg.scheme.vacuum_eps, cfg.run.emit_svg)?;
    if !report.failures.is_empty() {
        return Err(CliError::Check(report.failures.join("; ")));
    }
    Ok((report, files))
}
