//! Command-line front end: `run` and `compare` subcommands.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::compare::compare_policies;
use crate::config::{load_config, ConfigError, ScenarioConfig};
use crate::engine::{run_scenario, SimError};
use crate::output::{emit_report, Format};
use crate::scheduler::Policy;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_SIMULATION: i32 = 3;
pub const EXIT_IO: i32 = 4;

pub const SEED_ENV: &str = "BVCF_SEED";

#[derive(Debug, Parser)]
#[command(name = "bvcf", version, about = "Broker/VM cloudlet dispatch simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one scenario.
    Run {
        #[command(flatten)]
        common: CommonArgs,
        /// Scheduling policy: 1 = FCFS, 2 = round robin.
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=2))]
        policy: Option<i64>,
    },
    /// Run the scenario under both policies and report the differences.
    Compare {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Scenario file (JSON). The built-in default scenario is used when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Round-robin time quantum.
    #[arg(long)]
    pub tq: Option<f64>,
    /// RNG seed; overrides BVCF_SEED and the config file.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Per-transmission loss probability.
    #[arg(long)]
    pub loss: Option<f64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

/// Flag beats environment beats config file.
pub fn resolve_seed(
    config_seed: u64,
    env: Option<&str>,
    flag: Option<u64>,
) -> Result<u64, ConfigError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match env {
        Some(raw) => raw
            .trim()
            .parse()
            .map_err(|_| ConfigError::validation(SEED_ENV, "must be an unsigned 64-bit integer")),
        None => Ok(config_seed),
    }
}

fn prepare(common: &CommonArgs, policy: Option<i64>) -> Result<ScenarioConfig, ConfigError> {
    let mut cfg = match &common.config {
        Some(path) => load_config(path)?,
        None => ScenarioConfig::default_scenario(),
    };
    if let Some(choice) = policy {
        cfg.scheduler.policy = Policy::try_from(choice)
            .map_err(|e| ConfigError::validation("scheduler.policy", e.to_string()))?;
    }
    if let Some(tq) = common.tq {
        cfg.scheduler.tq = tq;
    }
    if let Some(p) = common.loss {
        cfg.channel.loss_probability = p;
    }
    let env = std::env::var(SEED_ENV).ok();
    cfg.rng_seed = resolve_seed(cfg.rng_seed, env.as_deref(), common.seed)?;
    cfg.validate()?;
    Ok(cfg)
}

fn config_exit(e: &ConfigError) -> i32 {
    eprintln!("error: {e}");
    match e {
        ConfigError::Io { .. } => EXIT_IO,
        _ => EXIT_VALIDATION,
    }
}

/// Parses `args` and executes the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    let (common, policy) = match &cli.command {
        Command::Run { common, policy } => (common, *policy),
        Command::Compare { common } => (common, None),
    };
    let cfg = match prepare(common, policy) {
        Ok(cfg) => cfg,
        Err(e) => return config_exit(&e),
    };
    let format = Format::from(common.format);
    let out = common.out.as_deref();

    let (emitted, code) = match cli.command {
        Command::Run { .. } => match run_scenario(&cfg) {
            Ok(report) => (emit_report(&report, format, out), EXIT_OK),
            Err(err) => {
                eprintln!("error: {}", err.error);
                let code = match err.error {
                    SimError::Config(_) => EXIT_VALIDATION,
                    _ => EXIT_SIMULATION,
                };
                (emit_report(&*err.report, format, out), code)
            }
        },
        Command::Compare { .. } => {
            let report = compare_policies(&cfg);
            let code = if report.deltas.is_some() {
                EXIT_OK
            } else {
                for side in report.sides() {
                    if let Some(e) = &side.error {
                        eprintln!("error ({}): {e}", side.config.scheduler.policy.name());
                    }
                }
                EXIT_SIMULATION
            };
            (emit_report(&report, format, out), code)
        }
    };
    match emitted {
        Ok(()) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_IO
        }
    }
}
