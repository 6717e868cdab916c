//! `funceq`: command-line front end for the verification pipelines.
//!
//! Exit codes: 0 when every check passes (or the report is informational),
//! 1 when a mathematical check fails, 2 on usage or input errors. Stdout
//! carries exactly one JSON document; diagnostics go to stderr.

mod commands;
mod verdict;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use funceq_core::field::DEFAULT_MAX_P;
use funceq_core::PrimeField;

#[derive(Debug, Parser)]
#[command(
    name = "funceq",
    version,
    about = "Solve and verify g(x+y)-g(x)-g(y) = x f(y) + y f(x)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Prime modulus of the field.
    #[arg(long, global = true)]
    prime: Option<u64>,

    /// Also run the exhaustive search (p <= 5).
    #[arg(long, global = true)]
    oracle: bool,

    /// Write the JSON document to this file as well as stdout.
    #[arg(long, global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,

    /// Worker threads for the parallel scans.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for randomized cocycle fuzzing.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Include elapsed_ms in the output (makes it run-dependent).
    #[arg(long, global = true)]
    timing: bool,

    /// Upper bound on the prime.
    #[arg(long, env = "FUNCEQ_MAX_P", default_value_t = DEFAULT_MAX_P, hide = true)]
    max_p: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the kernel of the linearized equation.
    Solve,
    /// Run every check available at the given prime.
    Verify,
    /// Alien-solution criteria and the alienation lemma.
    Alien,
    /// Exhaustive search, compared with the kernel.
    Brute,
    /// Check the inequality on a dyadic grid described by a JSON job file.
    Ineq {
        /// Job file path.
        spec_file: PathBuf,
    },
    /// Cauchy differences are symmetric cocycles.
    Cocycle {
        /// Random functions to test when exhaustive enumeration is too large.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

pub enum Failure {
    Usage(String),
    Internal(String),
}

impl Common {
    fn field(&self) -> Result<PrimeField, Failure> {
        let p = self
            .prime
            .ok_or_else(|| Failure::Usage("--prime is required".into()))?;
        PrimeField::with_cap(p, self.max_p).map_err(|e| Failure::Usage(e.to_string()))
    }
}

fn emit<T: Serialize>(doc: &T, json_out: Option<&PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc).expect("serializable") + "\n";
    if let Some(path) = json_out {
        std::fs::write(path, &text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut stdout = std::io::stdout().lock();
    match stdout
        .write_all(text.as_bytes())
        .and_then(|()| stdout.flush())
    {
        // a closed pipe (`| head`) is the reader's choice, not an error
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(Failure::Internal(format!("cannot write to stdout: {e}")))
        }
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let common = &cli.common;
    let started = Instant::now();
    let mut verdict = match &cli.command {
        Command::Solve => {
            let space = commands::solve(common.field()?);
            eprintln!(
                "solve: dimension {} in {} ms",
                space.dimension(),
                started.elapsed().as_millis()
            );
            emit(&space, common.json_out.as_ref())?;
            return Ok(true);
        }
        Command::Verify => commands::verify(common.field()?, common.oracle)?,
        Command::Alien => commands::alien(common.field()?)?,
        Command::Brute => commands::brute(common.field()?)?,
        Command::Cocycle { samples } => commands::cocycle(common.field()?, common.seed, *samples),
        Command::Ineq { spec_file } => {
            let source = std::fs::read_to_string(spec_file)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", spec_file.display())))?;
            commands::ineq(&source)?
        }
    };
    let elapsed = started.elapsed().as_millis() as u64;
    if common.timing {
        verdict.elapsed_ms = Some(elapsed);
    }
    eprintln!(
        "{}: {} in {elapsed} ms",
        verdict.command,
        if verdict.pass { "pass" } else { "FAIL" }
    );
    emit(&verdict, common.json_out.as_ref())?;
    Ok(verdict.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
