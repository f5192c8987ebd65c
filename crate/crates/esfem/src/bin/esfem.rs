//! Command-line runner for the benchmark experiments.

use clap::{Parser, Subcommand};
use esfem::experiments::{run, run_verify, RunConfig};
use esfem::norms::ErrorReport;
use esfem::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "esfem",
    about = "Evolving-surface finite elements with ALE mesh motion",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a JSON config file.
    Run {
        /// Path to the JSON run configuration.
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the numerical verification suite (transport identity,
    /// surface-measure convergence) and write diagnostics.csv.
    Verify {
        /// Output directory for diagnostics.csv.
        #[arg(long, default_value = "esfem-out")]
        output_dir: PathBuf,
    },
    /// Recompute and print the convergence table of an errors.csv file.
    Eoc {
        /// Path to an errors.csv produced by `esfem run`.
        #[arg(long)]
        input: PathBuf,
    },
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::SolverDiverged(_) => 2,
        Error::Config(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config } => {
            let config = match RunConfig::from_path(&config) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(3);
                }
            };
            match run(&config) {
                Ok(summary) => {
                    println!("{summary}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(exit_code_for(&e))
                }
            }
        }
        Command::Verify { output_dir } => match run_verify(&output_dir) {
            Ok(checks) => {
                let mut all_passed = true;
                for check in &checks {
                    println!(
                        "{}: {} (param {}, value {:.6e})",
                        check.name,
                        if check.passed { "PASS" } else { "FAIL" },
                        check.param,
                        check.value
                    );
                    all_passed &= check.passed;
                }
                if all_passed {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_code_for(&e))
            }
        },
        Command::Eoc { input } => match ErrorReport::read_csv(&input) {
            Ok(report) => {
                println!("h, linf_l2, eoc, l2_h1, eoc");
                for (row, (e1, e2)) in report.rows.iter().zip(report.eoc_columns()) {
                    println!(
                        "{:.5}, {:.5e}, {}, {:.5e}, {}",
                        row.h,
                        row.linf_l2,
                        e1.map_or("-".into(), |v| format!("{v:.5}")),
                        row.l2_h1,
                        e2.map_or("-".into(), |v| format!("{v:.5}")),
                    );
                }
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_code_for(&e))
            }
        },
    }
}
