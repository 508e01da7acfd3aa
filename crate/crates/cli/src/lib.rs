//! Batch driver for the ksphere verification campaigns.
//!
//! [`run`] executes one campaign (or all of them) and returns a [`Report`];
//! [`emit_report`] writes it as JSON or CSV.

pub mod campaigns;
pub mod config;
pub mod report;

pub use config::{Command, ConfigError, Format, RunConfig};
pub use report::{emit_report, Check, Parameters, Report, Summary};

/// Runs the configured campaign. The report depends only on the command,
/// seed, trials, pairs and tolerance.
pub fn run(cfg: &RunConfig) -> anyhow::Result<Report> {
    cfg.validate()?;
    let checks = match cfg.command {
        Command::VerifyAlgebra => campaigns::verify_algebra(cfg),
        Command::VerifyNorms => campaigns::verify_norms(cfg),
        Command::Counterexample => campaigns::counterexample(cfg),
        Command::SimulateSinglet => campaigns::simulate_singlet(cfg)?,
        Command::Chsh => campaigns::chsh(cfg)?,
        Command::All => {
            let mut all = campaigns::verify_algebra(cfg);
            all.extend(campaigns::verify_norms(cfg));
            all.extend(campaigns::counterexample(cfg));
            all.extend(campaigns::simulate_singlet(cfg)?);
            all.extend(campaigns::chsh(cfg)?);
            all
        }
    };
    let parameters = Parameters {
        trials: cfg.trials,
        pairs: cfg.pairs,
        tolerance: cfg.tolerance,
    };
    Ok(Report::new(cfg.command.name(), cfg.seed, parameters, checks))
}
