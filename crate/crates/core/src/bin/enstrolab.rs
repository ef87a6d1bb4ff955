//! Command-line front end: run bundled or user-supplied experiment specs
//! and emit CSV artifacts plus JSON reports. Exit code 0 iff every
//! assertion passes.

use clap::{Args, Parser, Subcommand};
use enstrolab::harness::{bundled_specs, run, ExperimentSpec, Report};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "enstrolab", version, about = "Vorticity dissipation laboratory")]
struct Cli {
    /// Print the bundled acceptance specs (as JSON) and exit.
    #[arg(long)]
    list_specs: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Experiment spec (JSON). Defaults to the bundled spec(s) of this kind.
    #[arg(long)]
    spec: Option<PathBuf>,

    /// Output directory for CSV artifacts and the JSON report.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand, Clone)]
enum Command {
    /// Cantor-family saturation ratios and ball-mass envelopes.
    Cantor(RunArgs),
    /// Nash-inequality ratio suites with frozen constants.
    Nash(RunArgs),
    /// Circle-measure enstrophy and dissipation rates.
    Circle(RunArgs),
    /// Rescaled-bump scaling identities.
    Bump(RunArgs),
    /// Integrable log-decay datum: spectrum, enstrophy, budget ratio.
    Logdatum(RunArgs),
    /// Torus solver runs: balances, invariants, envelope margins.
    Torus(RunArgs),
    /// Budget tables, envelope identities, timescale verdicts.
    Budget(RunArgs),
    /// Run every bundled spec and aggregate.
    Report(RunArgs),
}

fn load_or_bundled(args: &RunArgs, tag: Option<&str>) -> Result<Vec<ExperimentSpec>, String> {
    match &args.spec {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let spec = ExperimentSpec::from_json(&text).map_err(|e| e.to_string())?;
            if let Some(tag) = tag {
                if spec.kind.tag() != tag {
                    return Err(format!(
                        "spec kind `{}` does not match the `{tag}` subcommand",
                        spec.kind.tag()
                    ));
                }
            }
            Ok(vec![spec])
        }
        None => {
            let all = bundled_specs();
            Ok(match tag {
                Some(tag) => all.into_iter().filter(|s| s.kind.tag() == tag).collect(),
                None => all,
            })
        }
    }
}

fn execute(specs: &[ExperimentSpec], out: &std::path::Path) -> Result<Vec<Report>, String> {
    let mut reports = Vec::new();
    for spec in specs {
        let report = run(spec, Some(out)).map_err(|e| format!("{}: {e}", spec.name))?;
        println!("== {} ({})", spec.name, report.input_hash);
        for line in report.summary_lines() {
            println!("{line}");
        }
        for note in &report.notes {
            println!("   note: {note}");
        }
        reports.push(report);
    }
    Ok(reports)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list_specs {
        for spec in bundled_specs() {
            println!("# {}", spec.name);
            println!("{}", spec.to_json().expect("serializable"));
        }
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("no subcommand given; try --help or --list-specs");
        return ExitCode::from(2);
    };
    let (args, tag) = match &command {
        Command::Cantor(a) => (a.clone(), Some("cantor")),
        Command::Nash(a) => (a.clone(), Some("nash")),
        Command::Circle(a) => (a.clone(), Some("circle")),
        Command::Bump(a) => (a.clone(), Some("bump")),
        Command::Logdatum(a) => (a.clone(), Some("logdatum")),
        Command::Torus(a) => (a.clone(), Some("torus")),
        Command::Budget(a) => (a.clone(), Some("budget")),
        Command::Report(a) => (a.clone(), None),
    };
    let specs = match load_or_bundled(&args, tag) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match execute(&specs, &args.out) {
        Ok(reports) => {
            let total: usize = reports.iter().map(|r| r.assertions.len()).sum();
            let passed: usize = reports
                .iter()
                .map(|r| r.assertions.iter().filter(|a| a.pass).count())
                .sum();
            println!("-- {passed}/{total} assertions passed");
            if reports.iter().all(|r| r.all_pass()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
