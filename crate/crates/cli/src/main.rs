//! `divcss`: build CSS codes from divisible codes, check CSS-T conditions,
//! and verify transversal gates. Every run prints a JSON report.

mod commands;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use divcss::verify::{GateSpec, DEFAULT_TOLERANCE};
use divcss::BitVector;

use commands::{CheckArgs, CliError, SzArg, VerifyArgs};
use report::{CommandEcho, Recorder, Status};

#[derive(Parser)]
#[command(name = "divcss", version, about = "CSS codes from 2^m-divisible codes, CSS-T checks and transversal gates")]
struct Cli {
    /// Worker threads for enumeration and simulation (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest code dimension enumerated exhaustively.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in codes, re-verifying their parameters.
    Catalog,
    /// Puncture a divisible code, optionally repeat it, and write the pair.
    Construct {
        /// Catalog name or matrix file.
        source: String,
        /// Punctured coordinates (default: floor(min{k, d, d_dual} / 2)).
        #[arg(long)]
        t: Option<usize>,
        /// Repeat the punctured pair 2^p times.
        #[arg(long, default_value_t = 0)]
        p: u32,
        /// Pair file to write.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the CSS-T checks on a pair file.
    Check {
        pair: PathBuf,
        /// Signature vector, or `search[:budget]` to look for one.
        #[arg(long, value_parser = commands::parse_sz)]
        sz: Option<SzArg>,
        /// Candidate budget for `--sz search`.
        #[arg(long)]
        budget: Option<u64>,
        /// First candidate label for `--sz search`.
        #[arg(long, default_value_t = 0)]
        cursor: u64,
        /// Obstruction scan over all of C2 and all coset elements.
        #[arg(long)]
        broad: bool,
    },
    /// Simulate transversal gates on the encoded basis states.
    Verify {
        pair: PathBuf,
        /// Comma-separated subset of rz:<l>, t, s, h, cz.
        #[arg(long, value_delimiter = ',', value_parser = commands::parse_gate, default_value = "t")]
        gates: Vec<GateSpec>,
        /// Signature vector (default: from the file, else zero).
        #[arg(long)]
        sz: Option<BitVector>,
        /// Amplitude tolerance for the dense H check.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
}

fn configure(cli: &Cli) -> Result<(), CliError> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?;
    }
    if let Some(cap) = cli.cap {
        divcss::gf2::set_enumeration_cap(cap);
    }
    Ok(())
}

fn run(cli: &Cli, rec: &mut Recorder) -> Result<(), CliError> {
    configure(cli)?;
    match &cli.command {
        Command::Catalog => commands::catalog(rec),
        Command::Construct { source, t, p, out } => commands::construct(rec, source, *t, *p, out.as_deref()),
        Command::Check {
            pair,
            sz,
            budget,
            cursor,
            broad,
        } => commands::check(
            rec,
            &CheckArgs {
                pair,
                sz: sz.clone(),
                budget: *budget,
                cursor: *cursor,
                broad: *broad,
            },
        ),
        Command::Verify { pair, gates, sz, tol } => commands::verify(
            rec,
            &VerifyArgs {
                pair,
                gates,
                sz: sz.clone(),
                tol: *tol,
            },
        ),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Catalog => "catalog",
        Command::Construct { .. } => "construct",
        Command::Check { .. } => "check",
        Command::Verify { .. } => "verify",
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cli = Cli::parse();
    let mut rec = Recorder::new();
    if let Err(e) = run(&cli, &mut rec) {
        rec.set_status(e.status(), e.message());
    }
    let doc = rec.finish(
        CommandEcho {
            name: command_name(&cli.command).into(),
            args: std::env::args().skip(1).collect(),
        },
        started,
    );

    for c in &doc.checks {
        let mark = match (c.required, c.verdict) {
            (true, true) => "pass",
            (true, false) => "FAIL",
            (false, _) => "info",
        };
        eprintln!("[{mark}] {}: {}", c.id, c.summary);
    }
    if let Some(m) = &doc.outcome.message {
        eprintln!("{}: {m}", if doc.outcome.status == Status::Pass { "note" } else { "error" });
    }

    let json = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
    let code = doc.outcome.exit_code;
    match &cli.report {
        Some(path) => {
            if let Err(e) = fs::write(path, json) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(Status::UsageError.exit_code());
            }
        }
        None => print!("{json}"),
    }
    ExitCode::from(code)
}
