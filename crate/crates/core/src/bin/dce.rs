//! Scenario-driven command line front end.
//!
//! Usage: dce <verb> --scenario FILE_OR_PRESET [--out DIR] [--jobs N]
//!
//! Exit codes: 0 on success, 2 on parse or validation errors, 3 when
//! every sweep point fails numerically.

use clap::Parser;
use dce_lab::scenario::{resolve_scenario, run_scenario};
use dce_lab::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dce",
    about = "Numerical laboratory for the dynamical Casimir effect and quantum friction",
    version
)]
struct Cli {
    /// Scenario verb: mirror, moore, cavity, friction, plasma, estimate.
    verb: String,
    /// Scenario file path or built-in preset name.
    #[arg(long)]
    scenario: String,
    /// Output directory for report files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Number of worker threads for sweep points.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let verb = dce_lab::scenario::Verb::parse(&cli.verb)?;
    let scenario = resolve_scenario(&cli.scenario)?;
    if scenario.verb != verb {
        return Err(Error::Validation(format!(
            "scenario '{}' has verb '{}', not '{}'",
            scenario.name,
            scenario.verb.as_str(),
            cli.verb
        )));
    }
    if cli.jobs == 0 {
        return Err(Error::Validation("--jobs must be at least 1".into()));
    }
    let summary = run_scenario(&scenario, &cli.out, cli.jobs)?;
    println!(
        "{}: {} point(s) succeeded, {} failed",
        scenario.name, summary.succeeded, summary.failed
    );
    println!("wrote {}", summary.json_path.display());
    if let Some(csv) = &summary.csv_path {
        println!("wrote {}", csv.display());
    }
    if summary.succeeded == 0 && summary.failed > 0 {
        eprintln!("error: all sweep points failed; see the failures list in the report");
        return Ok(3);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Validation(_) | Error::Parse(_) | Error::Io(_) => 2,
                _ => 3,
            };
            ExitCode::from(code)
        }
    }
}
