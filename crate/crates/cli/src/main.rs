use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ddf_cli::config::{self, Setting};
use ddf_cli::{default_outdir, experiment, output, presets, run_to_dir, CliError, CliResult};

#[derive(Parser)]
#[command(name = "ddf", version, about = "Delta-shock finite-volume experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a config file or a named preset.
    Run {
        /// Config file.
        config: Option<PathBuf>,
        #[arg(long, conflicts_with = "config")]
        preset: Option<String>,
        /// `section.key=value`, applied after the file or preset.
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Output directory (default: run.outdir or out/<name>).
        #[arg(long)]
        outdir: Option<PathBuf>,
    },
    /// List the preset registry.
    ListPresets,
    /// Run a refinement ladder against the exact density and print the EOC table.
    Convergence {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = 4)]
        refinements: usize,
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        #[arg(long)]
        outdir: Option<PathBuf>,
    },
}

fn overrides(raw: &[String]) -> CliResult<Vec<Setting>> {
    raw.iter().map(|s| config::parse_override(s)).collect()
}

fn load(config: Option<PathBuf>, preset: Option<String>, raw: &[String]) -> CliResult<ddf_cli::ExperimentConfig> {
    let ov = overrides(raw)?;
    match (config, preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
            let mut cfg = config::parse_config_with(&text, &ov)?;
            let named = text
                .lines()
                .any(|l| l.split('#').next().unwrap_or("").trim_start().starts_with("name"));
            if cfg.name == "experiment" && !named {
                if let Some(stem) = path.file_stem() {
                    cfg.name = stem.to_string_lossy().into_owned();
                }
            }
            Ok(cfg)
        }
        (None, Some(name)) => config::from_preset(&name, &ov),
        (None, None) => Err(CliError::Config("give a config file or --preset".into())),
    }
}

fn status(ok: bool) -> &'static str {
    let color = std::io::stdout().is_terminal() && std::env::var_os("NO_COLOR").is_none();
    match (ok, color) {
        (true, true) => "\x1b[32mok\x1b[0m",
        (false, true) => "\x1b[31mfailed\x1b[0m",
        (true, false) => "ok",
        (false, false) => "failed",
    }
}

fn real_main(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::ListPresets => {
            for name in presets::NAMES {
                println!("{name:8} {}", presets::describe(name).unwrap_or(""));
            }
            Ok(())
        }
        Command::Run {
            config,
            preset,
            overrides,
            outdir,
        } => {
            let cfg = load(config, preset, &overrides)?;
            let dir = outdir.unwrap_or_else(|| default_outdir(&cfg));
            match run_to_dir(&cfg, &dir) {
                Ok((report, files)) => {
                    println!(
                        "{}: {} steps to t = {}, min rho {:e}; {} files in {} [{}]",
                        cfg.name,
                        report.stats.steps,
                        report.stats.t_final,
                        report.stats.min_density,
                        files.len(),
                        dir.display(),
                        status(true)
                    );
                    Ok(())
                }
                Err(e @ CliError::Check(_)) => {
                    println!("{}: artifacts in {} [{}]", cfg.name, dir.display(), status(false));
                    Err(e)
                }
                Err(e) => Err(e),
            }
        }
        Command::Convergence {
            preset,
            refinements,
            overrides: raw,
            outdir,
        } => {
            let cfg = config::from_preset(&preset, &overrides(&raw)?)?;
            let table = experiment::convergence(&cfg, refinements)?;
            let csv = output::convergence_csv(&table);
            print!("{csv}");
            println!("eoc_fit = {}", output::fmt_num(table.eoc_fit));
            let dir = outdir.unwrap_or_else(|| default_outdir(&cfg));
            output::ensure_dir(&dir)?;
            let path = dir.join("convergence.csv");
            std::fs::write(&path, csv).map_err(|e| CliError::io(&path, e))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match real_main(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ddf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
