use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use liext::report::Format;
use liext::sample::DEFAULT_SEED;

/// Workbench for linear extensions of operator algebras and their
/// differential invariants.
#[derive(Parser)]
#[command(name = "liext", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every task of a problem script and print or save the report.
    Run {
        /// Problem script to execute.
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        /// Write the report to this file instead of standard output.
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
        /// Report rendering.
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
        /// Seed for the sampled rank checks.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Replay the bundled audit cases and print the findings.
    Corpus {
        /// Replay only these case identifiers (repeatable; default all).
        #[arg(long = "case", value_name = "ID")]
        case: Vec<String>,
        /// List the available cases instead of replaying them.
        #[arg(long)]
        list: bool,
        /// Seed for the sampled rank checks.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Parse and validate a problem script without running its tasks.
    Parse {
        /// Problem script to check.
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Machine,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("liext: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Run { spec, report, format, seed } => {
            let source = read(&spec)?;
            let problem = liext::parse_problem(&source).map_err(|e| e.to_string())?;
            let rep = liext::run_problem(&problem, &source, seed);
            let rendered = rep.render(match format {
                OutFormat::Text => Format::Text,
                OutFormat::Machine => Format::Machine,
            });
            match report {
                Some(path) => fs::write(&path, rendered)
                    .map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{rendered}"),
            }
            Ok(exit(rep.exit_code()))
        }
        Cmd::Corpus { case, list, seed } => {
            if list {
                for c in liext::cases() {
                    println!("{:<4}{}", c.id, c.title);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let rep = liext::corpus_report(&case, seed).map_err(|e| e.to_string())?;
            print!("{}", rep.render(Format::Text));
            Ok(exit(rep.exit_code()))
        }
        Cmd::Parse { spec } => {
            let source = read(&spec)?;
            let problem = liext::parse_problem(&source).map_err(|e| e.to_string())?;
            let label = problem.name.as_deref().unwrap_or("unnamed");
            println!(
                "parsed {label}: {} operator(s), {} task(s)",
                problem.ops.len(),
                problem.tasks.len()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}
