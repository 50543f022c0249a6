use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod check;
mod convert;
mod params;
mod simulate;

#[derive(Parser)]
#[command(name = "hyts", version, about = "Hybrid systems on generalized time scales")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// JSON object of scenario parameters.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Scenario parameter `key=value`; repeatable, overrides `--config`.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Seed for randomly drawn initial states.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Run a scenario and write trace.csv, report.json (and impacts.csv for the ball).
    Simulate {
        scenario: Scenario,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Convert between hybrid time domains and generalized time scales.
    Convert(convert::ConvertArgs),
    /// Run a stability check on a scenario ensemble or on trace files.
    Check(check::CheckArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Scenario {
    Example1Continuous,
    Example1Discrete,
    Example2,
    BouncingBall,
    BouncingBallZeno,
}

impl Scenario {
    pub fn name(self) -> String {
        self.to_possible_value().unwrap().get_name().to_string()
    }
}

/// Bad invocation or configuration; exits with status 2.
#[derive(Debug)]
pub struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Prints to stdout; a reader that closed the pipe early is not an error.
pub fn print_json(value: &serde_json::Value) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{}", serde_json::to_string_pretty(value)?) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

/// Outcome of a command that ran to completion.
pub enum Status {
    Ok,
    Failed,
}

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Simulate { scenario, common, out } => simulate::run(scenario, &common, &out),
        Command::Convert(args) => convert::run(&args),
        Command::Check(args) => check::run(&args),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}\n\nRun with --help for usage.");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
