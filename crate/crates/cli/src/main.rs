mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Failure, Format};

#[derive(Parser, Debug)]
#[command(name = "linfrac", version, about = "Exact analysis of k-step linear fractional recurrences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Emit the JSON report.
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Emit a human-readable table (default).
    #[arg(long, global = true)]
    table: bool,
    /// Master seed for every sampled point and line.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Working precision in bits for spectral radii.
    #[arg(long, global = true, default_value_t = linfrac::picaction::DEFAULT_PRECISION)]
    precision: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pullback matrix, characteristic polynomial and spectral radius of a model.
    Charpoly {
        #[arg(long)]
        model: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        nstar: Option<usize>,
    },
    /// Full classification of a parameter file.
    Classify {
        #[arg(long)]
        params: PathBuf,
        /// Upper bound on the n* search.
        #[arg(long)]
        max: Option<usize>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Skip the period certificate.
        #[arg(long)]
        no_certify: bool,
    },
    /// Measured degree sequence against the model prediction.
    Degseq {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Lyness map: period certificate, invariants, relations or integrals.
    Lyness {
        #[arg(long)]
        k: usize,
        /// Rational parameter a; symbolic when omitted (invariants, relations).
        #[arg(long)]
        a: Option<String>,
        #[arg(long, value_enum)]
        action: LynessAction,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Certify that f^p = id with p minimal.
    Certify {
        #[arg(long, conflicts_with = "family")]
        params: Option<PathBuf>,
        #[arg(long, value_enum)]
        family: Option<Family>,
        #[arg(long)]
        k: Option<usize>,
        /// Period to certify; defaults to the predicted or measured one.
        #[arg(long)]
        period: Option<usize>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Orbit of Sigma_BC until it reaches Sigma_beta-gamma.
    Nstar {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        max: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum LynessAction {
    Certify,
    Invariants,
    Relations,
    Integrals,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Family {
    Period4k,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let format = if cli.common.json { Format::Json } else { Format::Table };
    let ctx = report::Context::new(argv, &cli.common);
    let outcome = match cli.command {
        Command::Charpoly { model, k, nstar } => commands::charpoly(&ctx, &model, k, nstar),
        Command::Classify { params, max, trials, no_certify } => commands::classify(&ctx, &params, max, trials, !no_certify),
        Command::Degseq { params, n } => commands::degseq(&ctx, &params, n),
        Command::Lyness { k, a, action, trials } => commands::lyness(&ctx, k, a.as_deref(), action, trials),
        Command::Certify { params, family, k, period, trials } => {
            commands::certify(&ctx, params.as_deref(), family, k, period, trials)
        }
        Command::Nstar { params, max } => commands::nstar(&ctx, &params, max),
    };
    match outcome {
        Ok(run) => {
            run.emit(format);
            ExitCode::from(run.exit)
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
