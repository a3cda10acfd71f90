use clap::{Args, Parser, Subcommand, ValueEnum};
use metacyclic::report::{classify_report, defdatum_report, hasse_report, to_json, to_text};
use metacyclic::sweep;
use metacyclic::{Error, PrimeContext, TypeVector};
use serde::Serialize;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "metacyclic", version, about = "Reduction of metacyclic covers and their Hurwitz spaces over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hasse invariant, its zeros and the supersingular factors.
    Hasse {
        #[command(flatten)]
        job: Job,
        /// Values of lambda in F_p at which to report Phi and the Frobenius rank pair.
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<u32>,
    },
    /// Reduction case, monodromy group, Galois group and ramification signature.
    Classify {
        #[command(flatten)]
        job: Job,
    },
    /// Deformation datum of a mixed, non-exceptional type.
    Defdatum {
        #[command(flatten)]
        job: Job,
    },
    /// Every type for m <= M and 5 < p <= P, e.g. `sweep m<=6 p<=31`.
    Sweep {
        /// Bounds of the form `m<=M` and `p<=P` (defaults 6 and 31).
        bounds: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct Job {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    m: u32,
    /// Type as a1,a2,a3,a4.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    a: Vec<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl Job {
    fn resolve(&self) -> Result<(PrimeContext, TypeVector), Error> {
        let a: [u32; 4] = self
            .a
            .as_slice()
            .try_into()
            .map_err(|_| Error::InvalidType(format!("expected 4 entries in --a, got {}", self.a.len())))?;
        let tv = TypeVector::new(self.m, a)?;
        let ctx = PrimeContext::for_type(self.p, &tv)?;
        Ok((ctx, tv))
    }
}

fn emit<T: Serialize>(value: &T, format: Format) {
    match format {
        Format::Json => println!("{}", to_json(value)),
        Format::Text => print!("{}", to_text(value)),
    }
}

fn parse_bounds(bounds: &[String]) -> Result<(u32, u32), Error> {
    let (mut max_m, mut max_p) = (6, 31);
    for b in bounds {
        let bad = || Error::InvalidArgument(format!("bound {b:?} is not of the form m<=N or p<=N"));
        let (key, val) = b.split_once("<=").ok_or_else(bad)?;
        let val: u32 = val.trim().parse().map_err(|_| bad())?;
        match key.trim() {
            "m" => max_m = val,
            "p" => max_p = val,
            _ => return Err(bad()),
        }
    }
    Ok((max_m, max_p))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Hasse { job, lambda } => {
            let (ctx, tv) = job.resolve()?;
            emit(&hasse_report(&ctx, &tv, &lambda)?, job.format);
        }
        Command::Classify { job } => {
            let (ctx, tv) = job.resolve()?;
            emit(&classify_report(&ctx, &tv)?, job.format);
        }
        Command::Defdatum { job } => {
            let (ctx, tv) = job.resolve()?;
            emit(&defdatum_report(&ctx, &tv)?, job.format);
        }
        Command::Sweep { bounds, format } => {
            let (max_m, max_p) = parse_bounds(&bounds)?;
            let rep = sweep::run(max_m, max_p);
            match format {
                Format::Json => println!("{}", to_json(&rep)),
                Format::Text => print!("{}", sweep::summary_table(&rep)),
            }
            let failures: Vec<String> = rep
                .rows
                .iter()
                .flat_map(|r| r.errors.iter().map(move |e| format!("p={} ({}; {:?}): {e}", r.p, r.m, r.a)))
                .collect();
            if !failures.is_empty() {
                for f in &failures {
                    eprintln!("{f}");
                }
                return Err(Error::Consistency(format!("{} sweep rows failed", failures.len())));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
