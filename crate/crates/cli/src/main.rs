use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use dwa_core::config::{RunConfig, THREADS_ENV};
use dwa_core::report::{Report, Status};
use dwa_core::{dump, suite};

#[derive(Parser)]
#[command(name = "dwa", version, about = "Exact checks for the deformed W_N algebra and its limits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suites selected in a TOML config and write a JSON report.
    Verify {
        config: PathBuf,
        /// Report path; overrides `output` in the config.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Worker threads; the DWA_THREADS environment variable takes precedence.
        #[arg(short = 'j', long)]
        threads: Option<usize>,
    },
    /// Print the exact coefficients of a series, e.g. `f:N=3:i=1:j=2` or `bernoulli`.
    Dump {
        id: String,
        #[arg(short, long, default_value_t = 8)]
        order: usize,
    },
    /// List the registered suites.
    ListSuites,
}

fn print_summary(report: &Report) {
    for r in &report.records {
        if r.status == Status::Pass {
            continue;
        }
        let status = match r.status {
            Status::Fail => "FAIL",
            _ => "INCONCLUSIVE",
        };
        println!("{status:<12} {}", r.key());
        if let Some(w) = &r.witness {
            println!("             at {}: expected {}, got {}", w.location, w.expected, w.actual);
        }
    }
    let s = report.summary;
    println!("{} passed, {} failed, {} inconclusive", s.pass, s.fail, s.inconclusive);
}

fn verify(config: PathBuf, output: Option<PathBuf>, threads: Option<usize>) -> Result<bool> {
    let text = std::fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
    let mut cfg = RunConfig::from_toml(&text)?;
    if threads.is_some() {
        cfg.threads = threads;
    }
    let started = Instant::now();
    let report = suite::run(&cfg)?;
    let out = output.or_else(|| cfg.output.as_ref().map(PathBuf::from));
    if let Some(path) = &out {
        std::fs::write(path, report.to_json_string() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    print_summary(&report);
    match &out {
        Some(path) => println!("report: {} ({:.1}s)", path.display(), started.elapsed().as_secs_f64()),
        None => println!("no report path given ({:.1}s)", started.elapsed().as_secs_f64()),
    }
    Ok(report.ok())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Verify { config, output, threads } => verify(config, output, threads),
        Command::Dump { id, order } => dump::dump_series(&id, order).map_err(Into::into).map(|v| {
            println!("{}", serde_json::to_string_pretty(&v).expect("dump serializes"));
            true
        }),
        Command::ListSuites => {
            for s in suite::registry() {
                println!("{:<14} {}", s.name(), s.description());
            }
            println!("\n{THREADS_ENV} overrides the worker thread count.");
            Ok(true)
        }
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
