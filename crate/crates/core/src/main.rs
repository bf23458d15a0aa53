use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use udr_fusion::abelian::{AbelianParams, Character, CharacterPair};
use udr_fusion::dihedral::DihedralParams;
use udr_fusion::error::Error;
use udr_fusion::ff;
use udr_fusion::report::{self, Check};

#[derive(Parser)]
#[command(name = "udr-fusion", version)]
#[command(about = "Fusion orbits, cohomology dimensions and deformation-ring classes for N x| G")]
struct Cli {
    /// Also write the output to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single action
    #[command(subcommand)]
    Analyze(Analyze),
    /// Tabulate a range of dihedral instances
    #[command(subcommand)]
    Scan(Scan),
    /// Run a verification suite; exit 1 if any check fails
    Verify {
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 1)]
        primes_per_n: usize,
    },
}

#[derive(Subcommand)]
enum Analyze {
    Dihedral(DihedralArgs),
    Abelian(AbelianArgs),
}

#[derive(Args)]
struct DihedralArgs {
    #[arg(long)]
    n: usize,
    /// Defaults to the smallest prime p = 1 (mod n)
    #[arg(long)]
    p: Option<u64>,
    /// Primitive n-th root of unity; defaults to the smallest one
    #[arg(long)]
    omega: Option<u64>,
    #[arg(long)]
    i0: usize,
}

#[derive(Args)]
struct AbelianArgs {
    /// Cyclic factor orders m1,m2,...
    #[arg(long, value_delimiter = ',', required = true)]
    orders: Vec<usize>,
    #[arg(long)]
    p: Option<u64>,
    /// Images of the generators under theta1, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    theta1: Vec<u64>,
    #[arg(long, value_delimiter = ',', required = true)]
    theta2: Vec<u64>,
}

#[derive(Subcommand)]
enum Scan {
    Dihedral {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        primes_per_n: usize,
    },
}

enum Failure {
    Usage(String),
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn dihedral_params(a: &DihedralArgs) -> Result<DihedralParams, Error> {
    let p = match a.p {
        Some(p) => p,
        None if a.n >= 3 => ff::find_prime(a.n as u64, 3)?,
        None => return Err(Error::InvalidParams(format!("n must be >= 3, got {}", a.n))),
    };
    match a.omega {
        Some(w) => DihedralParams::with_omega(a.n, p, w),
        None => DihedralParams::new(a.n, p),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let csv = cli.format == Format::Csv;
    match &cli.command {
        Command::Analyze(Analyze::Dihedral(a)) => {
            let params = dihedral_params(a)?;
            let r = report::analyze_dihedral(&params, a.i0)?;
            Ok(if csv { report::dihedral_csv(&r) } else { report::to_json(&r) })
        }
        Command::Analyze(Analyze::Abelian(a)) => {
            let params = match a.p {
                Some(p) => AbelianParams::new(a.orders.clone(), p)?,
                None => AbelianParams::smallest(a.orders.clone())?,
            };
            let pair = CharacterPair::new(
                Character::new(&params, &a.theta1)?,
                Character::new(&params, &a.theta2)?,
            );
            let r = report::analyze_abelian(&params, &pair)?;
            Ok(if csv { report::abelian_csv(&r) } else { report::to_json(&r) })
        }
        Command::Scan(Scan::Dihedral {
            n_min,
            n_max,
            primes_per_n,
        }) => {
            if *n_min < 3 || n_min > n_max || *primes_per_n == 0 {
                return Err(Failure::Usage(format!(
                    "bad range: need 3 <= n-min <= n-max and primes-per-n >= 1, got {n_min}..{n_max}, {primes_per_n}"
                )));
            }
            let rows = report::scan_dihedral(*n_min, *n_max, *primes_per_n)?;
            Ok(if csv {
                report::scan_csv(&rows)
            } else {
                report::to_json(&serde_json::json!({
                    "version": report::VERSION,
                    "params": { "n_min": n_min, "n_max": n_max, "primes_per_n": primes_per_n },
                    "rows": rows,
                }))
            })
        }
        Command::Verify {
            check,
            n_max,
            primes_per_n,
        } => {
            if *primes_per_n == 0 {
                return Err(Failure::Usage("primes-per-n must be >= 1".into()));
            }
            let suite = report::run_verify(*check, *n_max, *primes_per_n)?;
            let body = if csv { report::verify_csv(&suite) } else { report::to_json(&suite) };
            eprintln!(
                "verify {}: {} checks, {} failed",
                check.name(),
                suite.total,
                suite.failed
            );
            if suite.all_passed() {
                Ok(body)
            } else {
                emit(cli, &body).map_err(Failure::Usage)?;
                Err(Failure::Checks(format!("{} of {} checks failed", suite.failed, suite.total)))
            }
        }
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), String> {
    print!("{body}");
    if let Some(path) = &cli.out {
        std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(body) => match emit(&cli, &body) {
            Ok(()) => ExitCode::SUCCESS,
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Checks(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
