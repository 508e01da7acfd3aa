use std::fmt;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    VerifyAlgebra,
    VerifyNorms,
    Counterexample,
    SimulateSinglet,
    Chsh,
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyAlgebra => "verify-algebra",
            Command::VerifyNorms => "verify-norms",
            Command::Counterexample => "counterexample",
            Command::SimulateSinglet => "simulate-singlet",
            Command::Chsh => "chsh",
            Command::All => "all",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Run a verification campaign and write a report.
#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "ksphere", version, about)]
pub struct RunConfig {
    /// Campaign to run.
    #[arg(value_enum)]
    pub command: Command,

    #[arg(long, env = "KSPHERE_SEED", default_value_t = 1)]
    pub seed: u64,

    /// Random samples per check (trials per setting pair for simulate-singlet).
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,

    /// Random setting pairs for simulate-singlet.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub pairs: u64,

    /// Relative tolerance for the norm identities.
    #[arg(long, default_value_t = 1e-10, value_parser = parse_tolerance)]
    pub tolerance: f64,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Report path; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Worker threads for simulate-singlet. Results do not depend on it.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,

    /// Per-trial CSV of the first setting pair (simulate-singlet and all).
    #[arg(long)]
    pub dump_trials: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    Trials,
    Pairs,
    Tolerance(f64),
    DumpWithoutSimulation(Command),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Trials => f.write_str("--trials must be at least 1"),
            ConfigError::Pairs => f.write_str("--pairs must be at least 1"),
            ConfigError::Tolerance(t) => write!(f, "--tolerance must be positive and finite, got {t}"),
            ConfigError::DumpWithoutSimulation(c) => {
                write!(f, "--dump-trials needs simulate-singlet or all, not {c}")
            }
        }
    }
}

impl std::error::Error for ConfigError {}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(format!("must be positive and finite, got {t}"))
    }
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            seed: 1,
            trials: 100_000,
            pairs: 20,
            tolerance: 1e-10,
            format: Format::Json,
            output: None,
            workers: 1,
            dump_trials: None,
        }
    }

    /// Checks the invariants clap cannot express, and those it does for
    /// configs built in code.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.trials < 1 {
            return Err(ConfigError::Trials);
        }
        if self.pairs < 1 {
            return Err(ConfigError::Pairs);
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(ConfigError::Tolerance(self.tolerance));
        }
        if self.dump_trials.is_some()
            && !matches!(self.command, Command::SimulateSinglet | Command::All)
        {
            return Err(ConfigError::DumpWithoutSimulation(self.command));
        }
        Ok(())
    }
}
