use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qreflect::catalog::{suite_checks, Suite};
use qreflect::config::{resolve, VerifyArgs};
use qreflect::dump::{dump, DumpArgs};
use qreflect::{emit_report, run_suite};

/// Exact verification of diagonal K-operators for the U_q(gl(N))
/// reflection equation.
#[derive(Parser)]
#[command(name = "qreflect", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks over the parameter grid; exit status 1 if any check fails.
    ///
    /// Unset parameters are drawn per grid point from a ChaCha8 stream
    /// seeded by --seed: q from ±p/r with 2 <= p, r <= 7, p != r; x, y, u,
    /// v, eps and p from nonzero rationals with |num|, |den| <= 5. Draws
    /// that collide (e.g. x = ±y, xy = ±1) are redrawn and the number of
    /// redraws is echoed in the report. QREFLECT_THREADS caps parallelism.
    Verify(Box<VerifyArgs>),
    /// List suites and their checks.
    ListSuites,
    /// Print one operator matrix with exact rational entries.
    Dump(Box<DumpArgs>),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => verify(&args),
        Command::ListSuites => {
            for suite in Suite::ALL {
                println!("{suite}");
                for c in suite_checks(suite) {
                    let float = if c.float_only() { " [float only]" } else { "" };
                    println!("  {:<34} {}{}", c.name, c.summary, float);
                }
            }
            ExitCode::SUCCESS
        }
        Command::Dump(args) => match dump(&args) {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(err) => {
                eprintln!("error: {err}");
                ExitCode::from(2)
            }
        },
    }
}

fn verify(args: &VerifyArgs) -> ExitCode {
    let cfg = match resolve(args) {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    let run = run_suite(&cfg);
    let reports: Vec<_> = run.reports().cloned().collect();
    match emit_report(&cfg, &reports, cfg.format, cfg.output.as_deref()) {
        Ok(bytes) => {
            if cfg.output.is_none() {
                let _ = std::io::stdout().write_all(&bytes);
            } else {
                let s = run.summary();
                eprintln!(
                    "pass={} fail={} skipped={} finding={}",
                    s.pass, s.fail, s.skipped, s.finding
                );
            }
        }
        Err(err) => {
            eprintln!("error: cannot write report: {err}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(run.exit_code() as u8)
}
