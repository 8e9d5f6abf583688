//! `adsvol`: batch front end for the exact AdS volume and Chern-Simons toolkit.
//!
//! Every command writes a single JSON document to stdout; human-readable
//! summaries go to stderr.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 I/O
//! error, 4 Euler class integrality failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adsvol::admissibility::{
    admissibility_report, total_word_count, ReportRecord, DEFAULT_MAX_WORD_LENGTH,
};
use adsvol::surface::{self, euler_class, fuchsian_regular_polygon, relator_residual};
use adsvol::verify::run_suite;
use adsvol::volume::{AdSDescriptor, VolumeRecord};
use adsvol::Error;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

const MAX_WORDS_ENV: &str = "ADSVOL_MAX_WORDS";
const DEFAULT_MAX_WORDS: u128 = 10_000_000;

#[derive(Parser)]
#[command(name = "adsvol", version, about = "Exact volumes and Chern-Simons invariants of closed AdS 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the regular-polygon Fuchsian representation of a genus-g surface group.
    Rep {
        #[arg(long, allow_hyphen_values = true)]
        genus: i64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Euler class of a representation file.
    Euler {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Lower bound on the equivariant Lipschitz constant and admissibility verdict.
    Lipschitz {
        #[arg(long)]
        rho: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_WORD_LENGTH)]
        max_word_len: usize,
    },
    /// Volume 4 (e^2 - f^2) / k, in units of pi^2.
    Volume(Triple),
    /// Chern-Simons invariant (f^2 - e^2) / (6k).
    Cs(Triple),
    /// Run the identity suite.
    Verify,
}

#[derive(Args)]
struct Triple {
    #[arg(long = "e", allow_hyphen_values = true)]
    e: i64,
    #[arg(long = "f", allow_hyphen_values = true)]
    f: i64,
    #[arg(long = "k", allow_hyphen_values = true)]
    k: i64,
}

enum Failure {
    Verification(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Lib(Error::Io { .. }) => 3,
            Failure::Lib(Error::Integrality { .. }) => 4,
            Failure::Lib(_) => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Verification(msg) => eprintln!("verification failed: {msg}"),
                Failure::Lib(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(failure.code())
        }
    }
}

fn emit(value: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON-serializable output")
    );
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Rep { genus, out } => run_rep(genus, &out),
        Command::Euler { rep } => {
            let rep = surface::read_file(&rep)?;
            let e = euler_class(&rep)?;
            eprintln!("genus {}: Euler class {} (residual {:e})", rep.genus(), e.euler, e.residual);
            emit(&json!({ "euler": e.euler, "residual": e.residual }));
            Ok(())
        }
        Command::Lipschitz {
            rho,
            sigma,
            max_word_len,
        } => run_lipschitz(&rho, &sigma, max_word_len),
        Command::Volume(t) | Command::Cs(t) => {
            let d = AdSDescriptor::new(t.e, t.f, t.k)?;
            for w in d.warnings() {
                eprintln!("warning: {w}");
            }
            let record = VolumeRecord::compute(&d)?;
            eprintln!(
                "Vol = {} pi^2 (signed {}), CS = {}",
                record.volume_pi2, record.volume_signed_pi2, record.cs
            );
            emit(&record);
            Ok(())
        }
        Command::Verify => {
            let report = run_suite();
            for c in &report.checks {
                eprintln!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            emit(&report);
            if report.passed {
                Ok(())
            } else {
                let names: Vec<&str> = report.failures().map(|c| c.name).collect();
                Err(Failure::Verification(names.join(", ")))
            }
        }
    }
}

fn run_rep(genus: i64, out: &Path) -> Result<(), Failure> {
    let genus = u32::try_from(genus)
        .map_err(|_| Error::InvalidInput(format!("genus must be at least 2, got {genus}")))?;
    let rep = fuchsian_regular_polygon(genus)?;
    let residual = relator_residual(&rep);
    let e = euler_class(&rep)?;
    surface::write_file(&rep, out)?;
    eprintln!(
        "wrote genus {genus} representation to {}: relator residual {residual:e}, Euler class {}",
        out.display(),
        e.euler
    );
    emit(&json!({
        "genus": genus,
        "out": out.display().to_string(),
        "relator_residual": residual,
        "euler": e.euler,
        "euler_residual": e.residual,
    }));
    Ok(())
}

fn max_words() -> Result<u128, Error> {
    match std::env::var(MAX_WORDS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("{MAX_WORDS_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_WORDS),
    }
}

fn run_lipschitz(rho: &Path, sigma: &Path, max_word_len: usize) -> Result<(), Failure> {
    let rho = surface::read_file(rho)?;
    let sigma = surface::read_file(sigma)?;
    let cap = max_words()?;
    let needed = total_word_count(rho.genus(), max_word_len);
    if needed > cap {
        return Err(Error::InvalidInput(format!(
            "{needed} words at length {max_word_len} exceed {MAX_WORDS_ENV} = {cap}"
        ))
        .into());
    }
    let report = admissibility_report(&rho, &sigma, max_word_len)?;
    eprintln!(
        "euler (rho, sigma) = ({}, {}); Lipschitz lower bound {} over {} words; verdict {:?}",
        report.euler_rho,
        report.euler_sigma,
        report.lipschitz.lower_bound,
        report.lipschitz.words_scanned,
        report.verdict
    );
    emit(&ReportRecord::from(&report));
    Ok(())
}
