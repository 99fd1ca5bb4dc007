use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cubic_selmer::cli_report::{
    analyze, certify, parse_curve, parse_root_number, render_analysis, render_certify,
    render_twists, run_selftest, twists, AnalyzeOptions, Cache, CacheEvent, Fixture, Outcome,
    EXIT_INTERNAL,
};
use cubic_selmer::Error;

/// 2-Selmer rank bounds for y^2 = F(x) with F a monic integer cubic.
///
/// Curves are given as a cubic in x ("x^3 - 7*x + 3") or as the
/// coefficients [a2, a1, a0] of x^3 + a2 x^2 + a1 x + a0.
#[derive(Parser)]
#[command(name = "selmer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hypotheses, class groups and the Selmer rank interval.
    Analyze {
        cubic: String,
        /// Root number +1 or -1, used when it cannot be computed.
        #[arg(long, allow_hyphen_values = true)]
        root_number: Option<String>,
        #[arg(long)]
        json: bool,
        /// Class-data cache file; SELMER_CACHE is used when absent.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Echoed in the report, not looked up.
        #[arg(long)]
        label: Option<String>,
    },
    /// Classification of prime twists E_{p*} with p up to the limit.
    Twists {
        cubic: String,
        #[arg(long)]
        limit: u64,
        #[arg(long, allow_hyphen_values = true)]
        root_number: Option<String>,
        /// Re-check the hypotheses on admissible twists with |d| up to this.
        #[arg(long, default_value_t = 2000)]
        verify: u64,
        #[arg(long)]
        json: bool,
    },
    /// Point search and the Kummer classes of the points found.
    Certify {
        cubic: String,
        #[arg(long)]
        height: u64,
        #[arg(long)]
        json: bool,
    },
    /// Runs the built-in fixtures.
    Selftest {
        /// Directory for the scratch cache file.
        #[arg(long)]
        scratch: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Error::HypothesesFailed(reason)) => {
            eprintln!("hypotheses FAIL: {reason}");
            ExitCode::from(Outcome::HypothesesFail.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INTERNAL as u8)
        }
    }
}

/// Writes to stdout, treating a closed pipe (`| head`) as success.
fn emit(text: &str) -> Result<(), Error> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Error> {
    emit(&(serde_json::to_string_pretty(value)? + "\n"))
}

fn run(command: Command) -> Result<i32, Error> {
    match command {
        Command::Analyze {
            cubic,
            root_number,
            json,
            cache,
            label,
        } => {
            let mut e = parse_curve(&cubic)?;
            if let Some(label) = label {
                e = e.with_label(label);
            }
            let opts = AnalyzeOptions {
                root_number: root_number.as_deref().map(parse_root_number).transpose()?,
            };
            let path = cache.or_else(|| std::env::var_os("SELMER_CACHE").map(PathBuf::from));
            let mut cache = path.map(Cache::open).transpose()?;
            let report = analyze(&e, &opts, cache.as_mut())?;
            if let Some(c) = cache.as_mut() {
                for ev in c.events() {
                    if let CacheEvent::Rejected { key, reason } = ev {
                        eprintln!("cache: dropped entry {key}: {reason}");
                    }
                }
                c.save()?;
            }
            if json {
                print_json(&report)?;
            } else {
                emit(&render_analysis(&report))?;
            }
            Ok(report.outcome().exit_code())
        }
        Command::Twists {
            cubic,
            limit,
            root_number,
            verify,
            json,
        } => {
            let e = parse_curve(&cubic)?;
            let root = root_number.as_deref().map(parse_root_number).transpose()?;
            let report = twists(&e, limit, root, verify)?;
            if json {
                print_json(&report)?;
            } else {
                emit(&render_twists(&report))?;
            }
            Ok(0)
        }
        Command::Certify {
            cubic,
            height,
            json,
        } => {
            let report = certify(&parse_curve(&cubic)?, height)?;
            if json {
                print_json(&report)?;
            } else {
                emit(&render_certify(&report))?;
            }
            Ok(0)
        }
        Command::Selftest { scratch } => {
            let dir = scratch.unwrap_or_else(std::env::temp_dir);
            let outcome = run_selftest(&Fixture::standard(), &dir);
            for c in &outcome.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    println!("{mark}  {}", c.name);
                } else {
                    println!("{mark}  {}  ({})", c.name, c.detail);
                }
            }
            Ok(if outcome.passed() { 0 } else { EXIT_INTERNAL })
        }
    }
}
