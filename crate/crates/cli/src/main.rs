use std::process::ExitCode;
use std::time::Instant;

use clap::{CommandFactory, Parser};
use ksphere_cli::{emit_report, run, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    if let Err(e) = cfg.validate() {
        RunConfig::command()
            .error(clap::error::ErrorKind::ArgumentConflict, e)
            .exit();
    }
    let start = Instant::now();
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let elapsed = start.elapsed();
    if let Err(e) = emit_report(&report, cfg.format, cfg.output.as_deref()) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    eprint!("{}", report.render_text());
    eprintln!("wall time: {:.3} s", elapsed.as_secs_f64());
    ExitCode::from(report.exit_code() as u8)
}
