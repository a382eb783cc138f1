//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 configuration error,
//! 3 numeric or internal error.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub use config::{Command, Format, KappaSpec, Molecule, RunConfig, Tolerances};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("numeric error: {0}")]
    Numeric(#[from] crate::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("verification failed: {0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numeric(crate::Error::Verification(_)) => 1,
            CliError::Numeric(_) | CliError::Io(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "gaudin-rotor", version)]
#[command(about = "Rigid rotor levels, kappa scans and Yang-Baxter/Gaudin verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Level table for one kappa or one molecule.
    Levels(Flags),
    /// Long-format energies over a kappa grid.
    Scan(Flags),
    /// Run every consistency check and write a JSON report.
    Verify(Flags),
    /// Gaudin spectra and Ray reconstruction diagnostics.
    Gaudin(Flags),
}

#[derive(Debug, Default, Args)]
pub struct Flags {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file (standard output when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub j_min: Option<u32>,
    #[arg(long)]
    pub j_max: Option<u32>,
    /// Single value `x` or grid `start:stop:step`.
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<String>,
    /// Rotational constants `A,B,C`.
    #[arg(long)]
    pub molecule: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Spectral shift `eps_A - eps_B`.
    #[arg(long, allow_hyphen_values = true)]
    pub delta_eps: Option<f64>,
    /// `name=value`; may be repeated.
    #[arg(long = "tol-override")]
    pub tol_override: Vec<String>,
}

impl CommandArgs {
    fn split(self) -> (Command, Flags) {
        match self {
            CommandArgs::Levels(f) => (Command::Levels, f),
            CommandArgs::Scan(f) => (Command::Scan, f),
            CommandArgs::Verify(f) => (Command::Verify, f),
            CommandArgs::Gaudin(f) => (Command::Gaudin, f),
        }
    }
}

/// Merges the optional config file with flags and validates the result.
pub fn resolve(command: Command, flags: Flags) -> Result<RunConfig, CliError> {
    let mut cfg = match &flags.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::empty(),
    };
    cfg.command = Some(command);
    if let Some(out) = flags.out {
        cfg.output.path = Some(out);
    }
    if let Some(f) = flags.format {
        cfg.output.format = Some(f);
    }
    if let Some(j) = flags.j_min {
        cfg.j_min = Some(j);
    }
    if let Some(j) = flags.j_max {
        cfg.j_max = Some(j);
    }
    if let Some(k) = &flags.kappa {
        cfg.kappa = Some(KappaSpec::parse(k)?);
        cfg.molecule = None;
    }
    if let Some(m) = &flags.molecule {
        cfg.molecule = Some(Molecule::parse(m)?);
        cfg.kappa = None;
    }
    if flags.kappa.is_some() && flags.molecule.is_some() {
        return Err(CliError::Config("--kappa and --molecule are mutually exclusive".into()));
    }
    if let Some(s) = flags.seed {
        cfg.seed = Some(s);
    }
    if let Some(d) = flags.delta_eps {
        cfg.delta_eps = Some(d);
    }
    for item in &flags.tol_override {
        let (name, value) = config::parse_override(item)?;
        cfg.tolerances.set(&name, value)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Runs a validated configuration, writing its artifact.
pub fn execute(cfg: &RunConfig) -> Result<(), CliError> {
    let command = cfg.command.ok_or_else(|| CliError::Config("no command given".into()))?;
    match command {
        Command::Levels => {
            let table = commands::levels(cfg)?;
            write_artifact(cfg, &output::render_levels(&table, cfg.format())?)
        }
        Command::Scan => {
            let rows = commands::scan(cfg)?;
            write_artifact(cfg, &output::render_scan(&rows, cfg.format())?)
        }
        Command::Gaudin => {
            let blocks = commands::gaudin(cfg)?;
            write_artifact(cfg, &output::render_gaudin(&blocks, cfg.format())?)?;
            let tol = cfg.tolerances.reconstruction;
            let worst = blocks.iter().map(|b| b.max_difference).fold(0.0, f64::max);
            if !(worst <= tol) {
                return Err(CliError::Failed(format!(
                    "reconstructed spectrum deviates by {worst:e} (tolerance {tol:e})"
                )));
            }
            Ok(())
        }
        Command::Verify => {
            let report = verify::run(cfg)?;
            let json = output::render_report(&report)?;
            let summary = verify::summary_text(&report, verify::use_color());
            if cfg.output.path.is_some() {
                write_artifact(cfg, &json)?;
                print!("{summary}");
            } else {
                // The report owns stdout; the summary moves to stderr.
                write_artifact(cfg, &json)?;
                eprint!("{summary}");
            }
            if report.summary.all_passed {
                Ok(())
            } else {
                Err(CliError::Failed(format!("{} of {} checks failed", report.summary.failed, report.summary.total)))
            }
        }
    }
}

fn write_artifact(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output.path {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Entry point of the binary.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    let (command, flags) = cli.command.split();
    let result = resolve(command, flags).and_then(|cfg| execute(&cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gaudin-rotor: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
