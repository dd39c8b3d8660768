//! Command-line front end.
//!
//! A run is described by a TOML [`RunConfig`] plus flag overrides; each
//! command renders one artifact (CSV or a JSON validation report) to
//! `--out` or standard output.

mod commands;
mod config;

pub use commands::{
    cmd_distribution, cmd_optimize, cmd_outage, cmd_pattern, cmd_validate, metadata_block, OutageDelta,
    ValidationReport, TOOL_VERSION,
};
pub use config::{
    linear_grid, DistributionSection, LinkSection, OptimizeSection, OutageSection, PatternSection, RunConfig,
    SectorizationSection, SimulationSection, SweepVariable, TerminalSection, ValidateSection,
};

use crate::antenna::Sector0Level;
use crate::error::{Error, Result};
use clap::{Parser, Subcommand};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "mmw-uav", version, about = "Link budget and outage analysis for UAV mmWave arrays")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub samples: Option<u64>,
    #[arg(long, global = true)]
    pub d_param: Option<u32>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=2))]
    pub lobes: Option<u32>,
    #[arg(long, global = true)]
    pub sector0: Option<Sector0Level>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Print the effective configuration and exit.
    #[arg(long, global = true)]
    pub print_config: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Actual, approximate and sectorized pattern cuts.
    Pattern,
    /// SNR density and CDF.
    Distribution,
    /// Outage probability sweep.
    Outage,
    /// Analytical model against Monte Carlo.
    Validate,
    /// Optimal array sizes.
    Optimize,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Pattern => "pattern",
            Command::Distribution => "distribution",
            Command::Outage => "outage",
            Command::Validate => "validate",
            Command::Optimize => "optimize",
        }
    }
}

impl Cli {
    /// Loads the config file, if any, and applies flag overrides.
    pub fn effective_config(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(out) = &self.out {
            cfg.output_path = Some(out.clone());
        }
        if let Some(s) = self.seed {
            cfg.simulation.seed = s;
        }
        if let Some(n) = self.samples {
            cfg.simulation.samples = n;
        }
        if let Some(d) = self.d_param {
            cfg.sectorization.d_param = d;
        }
        if let Some(j) = self.lobes {
            cfg.sectorization.lobes = j;
        }
        if let Some(s0) = self.sector0 {
            cfg.sectorization.sector0 = s0;
        }
        Ok(cfg)
    }
}

fn emit(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| Error::io(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("pattern");
    path.with_file_name(format!("{stem}{suffix}"))
}

/// Runs one command against a resolved configuration.
pub fn dispatch(command: Command, cfg: &RunConfig) -> Result<()> {
    let out = cfg.output_path.as_deref();
    log::info!("{} (config {})", command.name(), cfg.digest());
    match command {
        Command::Pattern => {
            let (cuts, table) = cmd_pattern(cfg)?;
            match out {
                Some(p) => {
                    emit(Some(p), &cuts)?;
                    emit(Some(&sibling(p, "_sectors.csv")), &table)
                }
                None => emit(None, &format!("{cuts}\n{table}")),
            }
        }
        Command::Distribution => emit(out, &cmd_distribution(cfg)?),
        Command::Outage => emit(out, &cmd_outage(cfg)?),
        Command::Validate => {
            let report = cmd_validate(cfg)?;
            emit(out, &report.to_json())?;
            report.verdict()
        }
        Command::Optimize => emit(out, &cmd_optimize(cfg)?),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return Ok(());
        }
        Err(e) => {
            let msg = e.to_string();
            return Err(Error::usage(msg.trim_start_matches("error: ").trim_end()));
        }
    };
    let cfg = cli.effective_config()?;
    if cli.print_config {
        return emit(None, &cfg.to_toml_string());
    }
    match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::usage(format!("thread pool: {e}")))?
            .install(|| dispatch(cli.command, &cfg)),
        None => dispatch(cli.command, &cfg),
    }
}
