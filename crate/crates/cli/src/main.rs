//! `linsolve`: solve `L(X) = a` for p-linearized `L` over GF(p) in GF(p^n).
//!
//! Exit codes: 0 success (solvable), 3 unsolvable, 1 parse or validation
//! error, 2 solver error, 4 internal error or failed self-check.

mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linsolve::poly::parse_digits;
use linsolve::{Error, Method, PrimeField, ProblemSpec, SolverContext, SolverOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use report::Render;

#[derive(Parser, Debug)]
#[command(name = "linsolve", version, about = "Solve L(X) = a for p-linearized L over GF(p) in GF(p^n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full solution set of L(X) = a in GF(p^n).
    Solve(SolveArgs),
    /// Basis of ker(L) in GF(p^n).
    Kernel(ProblemArgs),
    /// Least k with l | x^k - 1, with a certificate.
    Order(OrderArgs),
    /// The polynomials l', w, u, v, f, g and their identities.
    Decompose(ProblemArgs),
    /// Composition identities, kernel checks and the oracle grid.
    Selfcheck(SelfcheckArgs),
    /// CSV of median solve times, formula against elimination.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct ProblemArgs {
    #[arg(long)]
    p: u64,
    /// Coefficients α_0,α_1,... of L = Σ α_i X^{p^i}.
    #[arg(long)]
    coeffs: String,
    #[arg(long)]
    n: usize,
    /// Use this k (any multiple of the order of l) instead of computing it.
    #[arg(long)]
    k: Option<u64>,
    /// Also print ambient-field coordinates of every element.
    #[arg(long)]
    show_ambient: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Right-hand side as n coordinates over the echelon basis of GF(p^n).
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    a: Option<String>,
    /// Draw the right-hand side from the seeded generator.
    #[arg(long)]
    random: bool,
    #[arg(long, env = "LINSOLVE_SEED")]
    seed: Option<u64>,
    #[arg(long, default_value = "auto")]
    method: Method,
}

#[derive(Args, Debug)]
struct OrderArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    coeffs: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SelfcheckArgs {
    /// Run the full oracle grid (p^n up to 4096, 35 L per (p, n)).
    #[arg(long)]
    full: bool,
    #[arg(long, env = "LINSOLVE_SEED")]
    seed: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, default_value_t = 2)]
    p: u64,
    #[arg(long, default_value = "1,1,0,1")]
    coeffs: String,
    /// Extension degrees to time.
    #[arg(long, value_delimiter = ',', default_value = "8,16,24")]
    n: Vec<usize>,
    #[arg(long)]
    k: Option<u64>,
    /// Random right-hand sides per degree.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, env = "LINSOLVE_SEED")]
    seed: Option<u64>,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    Solver(Error),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPrime(_)
            | Error::PrimeTooLarge(_)
            | Error::Parse(_)
            | Error::DegreeMismatch { .. }
            | Error::NotInSubfield { .. }
            | Error::ZeroPolynomial
            | Error::ZeroConstantTerm => Failure::Usage(e.to_string()),
            Error::InternalInvariantViolation(msg) => Failure::Internal(msg),
            other => Failure::Solver(other),
        }
    }
}

impl Failure {
    fn report(&self) -> ExitCode {
        match self {
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
            Failure::Solver(e) => {
                eprintln!("error: {e}");
                if matches!(e, Error::OrderTooLarge { .. } | Error::InvalidK { .. }) {
                    eprintln!("hint: supply --k with a multiple of the order of l");
                }
                ExitCode::from(2)
            }
            Failure::Internal(msg) => {
                eprintln!("internal error: {msg}");
                ExitCode::from(4)
            }
        }
    }
}

pub(crate) type Outcome = Result<ExitCode, Failure>;

fn parse_coeffs(p: u64, coeffs: &str) -> Result<Vec<u64>, Failure> {
    let pf = PrimeField::new(p)?;
    Ok(parse_digits(pf, coeffs)?.into_iter().map(u64::from).collect())
}

fn context(args: &ProblemArgs) -> Result<SolverContext, Failure> {
    if args.n == 0 {
        return Err(Failure::Usage("--n must be positive".into()));
    }
    let mut spec = ProblemSpec::new(args.p, parse_coeffs(args.p, &args.coeffs)?, args.n);
    if let Some(k) = args.k {
        spec = spec.with_k(k);
    }
    Ok(SolverContext::build_with(spec, SolverOptions::default())?)
}

fn emit<T: Render>(value: &T, format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => {
            let json = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
            println!("{json}");
        }
        Format::Text => print!("{}", value.text()),
    }
    Ok(())
}

fn solve(args: SolveArgs) -> Outcome {
    let ctx = context(&args.problem)?;
    let coords: Vec<u32> = match &args.a {
        Some(a) => parse_digits(ctx.field.prime(), a)?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed.unwrap_or(0));
            (0..ctx.n()).map(|_| rng.gen_range(0..ctx.p())).collect()
        }
    };
    let a = ctx.element_from_coords(&coords)?;
    let sol = ctx.solve(&a, args.method)?;
    let out = report::SolveReport::new(&ctx, &a, &sol, args.problem.show_ambient)?;
    emit(&out, args.problem.common.format)?;
    Ok(if sol.solvable { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn kernel(args: ProblemArgs) -> Outcome {
    let ctx = context(&args)?;
    emit(&report::KernelReport::new(&ctx, args.show_ambient)?, args.common.format)?;
    Ok(ExitCode::SUCCESS)
}

fn order(args: OrderArgs) -> Outcome {
    let out = report::OrderReport::new(args.p, &parse_coeffs(args.p, &args.coeffs)?)?;
    emit(&out, args.common.format)?;
    Ok(ExitCode::SUCCESS)
}

fn decompose(args: ProblemArgs) -> Outcome {
    let ctx = context(&args)?;
    let out = report::DecomposeReport::new(&ctx)?;
    emit(&out, args.common.format)?;
    Ok(if out.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(4) })
}

fn selfcheck(args: SelfcheckArgs) -> Outcome {
    let out = report::SelfcheckReport::run(args.full, args.seed.unwrap_or(0))?;
    emit(&out, args.common.format)?;
    Ok(if out.passed { ExitCode::SUCCESS } else { ExitCode::from(4) })
}

fn bench(args: BenchArgs) -> Outcome {
    let alphas = parse_coeffs(args.p, &args.coeffs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed.unwrap_or(0));
    println!("{}", linsolve::solver::BenchRow::csv_header());
    if args.trials == 0 {
        return Ok(ExitCode::SUCCESS);
    }
    for &n in &args.n {
        let mut spec = ProblemSpec::new(args.p, alphas.clone(), n);
        if let Some(k) = args.k {
            spec = spec.with_k(k);
        }
        let ctx = SolverContext::build(spec)?;
        let rhs = (0..args.trials)
            .map(|_| {
                let coords: Vec<u32> = (0..n).map(|_| rng.gen_range(0..ctx.p())).collect();
                ctx.element_from_coords(&coords)
            })
            .collect::<Result<Vec<_>, _>>()?;
        for row in linsolve::solver::bench_rows(&ctx, &rhs) {
            println!("{}", row.to_csv());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Kernel(args) => kernel(args),
        Command::Order(args) => order(args),
        Command::Decompose(args) => decompose(args),
        Command::Selfcheck(args) => selfcheck(args),
        Command::Bench(args) => bench(args),
    };
    outcome.unwrap_or_else(|f| f.report())
}
