use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lpdiv_core::curves::{gsum, CurveModel, CurveSpec};
use lpdiv_core::decomp::{
    check_main_theorem, check_main_theorem_lpoly, counterexample_f3, gsum_invariance_scan,
    lpoly_of_curve, verify_conjecture_dk, Verdict,
};
use lpdiv_core::field::EnumerationLimit;
use lpdiv_core::zeta::LPolynomial;

mod report;

use report::{CountReport, GsumReport, LpolyReport, Render};

#[derive(Parser, Debug)]
#[command(
    name = "lpdiv",
    version,
    about = "L-polynomials of curves over small finite fields from exact point counts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for the enumeration kernels (default: logical CPUs).
    #[arg(long, global = true, env = "LPDIV_THREADS", value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Largest field to enumerate, in bits (log2 of the field size).
    #[arg(long = "max-m", global = true, default_value_t = 34)]
    max_m: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Point counts N_1..N_r of a curve (or the single N_m with --m).
    Count {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, conflicts_with = "horizon")]
        m: Option<u32>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        horizon: Option<u32>,
    },
    /// L-polynomial of a curve from its point counts.
    Lpoly {
        #[arg(long)]
        curve: PathBuf,
        /// Counts to enumerate; defaults to the genus. Extra counts are
        /// cross-checked against the result.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        horizon: Option<u32>,
    },
    /// The sum G_m^(k) of (-1)^Tr(x^(2^k+1) + 1/x) over nonzero x in GF(2^m).
    Gsum {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=40))]
        k: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Divisibility of L_{D_k} by L_{D_1} and the structure of the quotient.
    VerifyDk {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=40))]
        k: u32,
    },
    /// Checks whether equal counts for m not divisible by k force
    /// L_D(t) = Q(t^k) L_C(t). Inputs are curve or L-polynomial JSON files.
    CheckDiv {
        #[arg(long)]
        lc: PathBuf,
        #[arg(long)]
        ld: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        horizon: u32,
    },
    /// Table of G_m^(k) for k <= --k and m <= --m, with every
    /// G_m^(k) != G_m^(gcd(k, m)) listed.
    ScanGsum {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=40))]
        k: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// The fixed pair of L-polynomials over F_3 showing that gcd(m, k) = 1
    /// agreement is not enough.
    Counterexample,
}

/// Failure classes, mapped to exit codes 1 (input) and 2 (a theorem-level
/// check came out false, which means a bug).
enum Failure {
    Usage(String),
    Violation(String),
}

impl Failure {
    fn usage(e: impl ToString) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// A parsed input file: either a curve or an L-polynomial.
enum Input {
    Curve(CurveModel),
    Lpoly(LPolynomial),
}

fn read_json(flag: &str, path: &Path) -> Result<serde_json::Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("--{flag} {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("--{flag} {}: {e}", path.display())))
}

fn read_curve(flag: &str, path: &Path) -> Result<(CurveSpec, CurveModel), Failure> {
    let value = read_json(flag, path)?;
    let spec: CurveSpec = serde_json::from_value(value)
        .map_err(|e| Failure::Usage(format!("--{flag} {}: {e}", path.display())))?;
    let model = spec
        .to_model()
        .map_err(|e| Failure::Usage(format!("--{flag} {}: {e}", path.display())))?;
    Ok((spec, model))
}

fn read_input(flag: &str, path: &Path) -> Result<Input, Failure> {
    let value = read_json(flag, path)?;
    if value.get("model").is_some() {
        let (_, model) = read_curve(flag, path)?;
        Ok(Input::Curve(model))
    } else {
        serde_json::from_value(value)
            .map(Input::Lpoly)
            .map_err(|e| Failure::Usage(format!("--{flag} {}: {e}", path.display())))
    }
}

fn emit<T: Serialize + Render>(report: &T, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize"),
        Format::Table => report.table(),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let limit = EnumerationLimit(cli.max_m);
    let fmt = cli.format;
    match &cli.command {
        Command::Count { curve, m, horizon } => {
            let (spec, model) = read_curve("curve", curve)?;
            let (first, last) = match (m, horizon) {
                (Some(m), None) => (*m, *m),
                (None, Some(r)) => (1, *r),
                _ => return Err(Failure::usage("count needs --m or --horizon")),
            };
            let counts = (first..=last)
                .map(|m| model.count_points(m, limit).map(|n| (m, n)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(Failure::usage)?;
            let report = CountReport::new(spec, &model, counts);
            Ok(emit(&report, fmt))
        }
        Command::Lpoly { curve, horizon } => {
            let (spec, model) = read_curve("curve", curve)?;
            let horizon = horizon.map_or(model.genus(), |h| h as usize);
            let l = lpoly_of_curve(&model, horizon, limit).map_err(Failure::usage)?;
            Ok(emit(&LpolyReport::new(spec, &model, l, horizon), fmt))
        }
        Command::Gsum { k, m } => {
            let value = gsum(*k, *m, limit).map_err(Failure::usage)?;
            Ok(emit(&GsumReport::new(*k, *m, value), fmt))
        }
        Command::VerifyDk { k } => {
            let r = verify_conjecture_dk(*k, limit).map_err(Failure::usage)?;
            Ok(emit(&r, fmt))
        }
        Command::CheckDiv { lc, ld, k, horizon } => {
            let (k, horizon) = (*k as usize, *horizon as usize);
            let report = match (read_input("lc", lc)?, read_input("ld", ld)?) {
                (Input::Curve(c), Input::Curve(d)) => {
                    check_main_theorem(&c, &d, k, horizon, limit).map_err(Failure::usage)?
                }
                (Input::Lpoly(c), Input::Lpoly(d)) => {
                    check_main_theorem_lpoly(&c, &d, k, horizon).map_err(Failure::usage)?
                }
                (Input::Curve(c), Input::Lpoly(d)) => {
                    let c = lpoly_of_curve(&c, horizon, limit).map_err(Failure::usage)?;
                    check_main_theorem_lpoly(&c, &d, k, horizon).map_err(Failure::usage)?
                }
                (Input::Lpoly(c), Input::Curve(d)) => {
                    let d = lpoly_of_curve(&d, horizon, limit).map_err(Failure::usage)?;
                    check_main_theorem_lpoly(&c, &d, k, horizon).map_err(Failure::usage)?
                }
            };
            let out = emit(&report, fmt);
            if report.verdict == Verdict::TheoremAppliesViolationFound {
                return Err(Failure::Violation(out));
            }
            Ok(out)
        }
        Command::ScanGsum { k, m } => {
            let t = gsum_invariance_scan(*k, *m, limit).map_err(Failure::usage)?;
            Ok(emit(&t, fmt))
        }
        Command::Counterexample => {
            let r = counterexample_f3();
            let out = emit(&r, fmt);
            if !r.all_passed {
                return Err(Failure::Violation(out));
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
        {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Violation(out)) => {
            println!("{out}");
            eprintln!("error: theorem-level check failed; this indicates a bug");
            ExitCode::from(2)
        }
    }
}
