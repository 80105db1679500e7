use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use redei_core::congruence::SegmentParams;
use redei_core::directions::PointSet;
use redei_core::pairs::PairContext;
use redei_core::PrimeModulus;
use redei_forge::{commands, max_bivariate_p, render, run_sweep, verdict, ForgeError, Format, SweepConfig, Theorem, VerificationRecord};

#[derive(Parser)]
#[command(name = "redei-forge", version, about = "Check finite-field congruence and direction bounds against brute force")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Fill in elapsed_ms (makes reports non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// a x ≡ ±y with x, y <= ceil(sqrt p).
    SolveThue {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: u64,
    },
    /// a x ≡ ±y with x <= alpha, y <= p / alpha.
    SolveVinogradov {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        alpha: u64,
    },
    /// Residues a x ≡ ±y over the segments x <= alpha, y <= beta.
    Expressible {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        beta: u32,
        #[arg(long, default_value_t = 1)]
        mu: u32,
        #[arg(long, default_value_t = 1)]
        nu: u32,
        /// Only a x ≡ y.
        #[arg(long)]
        unsigned: bool,
    },
    /// Full polynomial audit of the segment construction.
    RedeiAudit {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        beta: u32,
    },
    /// s^k t ≡ y^k with s < g, y <= ceil((p-k-g)/(g-1)).
    Pairs {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        g: u64,
        /// Every k-th power residue when omitted.
        #[arg(long)]
        target: Option<u64>,
    },
    /// p = x^2 + y^2 for p ≡ 1 mod 4.
    TwoSquares {
        #[arg(long)]
        p: u64,
    },
    /// Ratio set against weighted sumsets for a point set.
    Directions {
        #[arg(long)]
        p: u64,
        /// Comma-separated a:b pairs.
        #[arg(long, value_delimiter = ',', value_parser = parse_points)]
        points: Vec<(u64, u64)>,
        /// Every nonzero alpha when omitted.
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// Whether A - A lies in the order-d subgroup, and |A|(|A|-1) <= d if so.
    HpCheck {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
        /// Comma-separated residues.
        #[arg(long, value_delimiter = ',')]
        set: Vec<u64>,
    },
    /// Largest A with A - A in the order-d subgroup.
    Corollary {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
    },
    /// Distinct ±u/v for u, v <= alpha against the totient count.
    Remark2 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        alpha: u32,
    },
    /// Grid sweep over a prime range.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    theorem: Theorem,
    #[arg(long, default_value_t = 3)]
    lo: u32,
    #[arg(long)]
    hi: u32,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random point sets per prime.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long = "k", value_delimiter = ',', default_values_t = [2u64, 4, 6])]
    k_values: Vec<u64>,
    #[arg(long, default_value_t = 4)]
    max_set_size: usize,
}

fn parse_points(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

fn prime(p: u64) -> Result<PrimeModulus, ForgeError> {
    Ok(PrimeModulus::new(p)?)
}

fn run(command: Command, timings: bool) -> Result<Vec<VerificationRecord>, ForgeError> {
    let start = std::time::Instant::now();
    let mut records = match command {
        Command::SolveThue { p, a } => vec![commands::thue(prime(p)?, a)?],
        Command::SolveVinogradov { p, a, alpha } => vec![commands::vinogradov(prime(p)?, a, alpha)?],
        Command::Expressible { p, alpha, beta, mu, nu, unsigned } => {
            let mut params = SegmentParams::new(prime(p)?, alpha, beta)?.scaled(mu, nu)?;
            if unsigned {
                params = params.unsigned();
            }
            vec![commands::expressible(&params)?]
        }
        Command::RedeiAudit { p, alpha, beta } => {
            vec![commands::redei_audit(prime(p)?, alpha, beta, max_bivariate_p()?)?]
        }
        Command::Pairs { p, k, g, target } => {
            let pm = prime(p)?;
            let ctx = PairContext::new(pm, k, g)?;
            let first = match target {
                Some(t) => commands::pair_target(&ctx, pm.element(t))?,
                None => commands::pair_sweep(&ctx, pm, k, g)?,
            };
            vec![first, commands::pair_compare(pm, k, g)?]
        }
        Command::TwoSquares { p } => vec![commands::two_squares(prime(p)?)?],
        Command::Directions { p, points, alpha } => {
            let s = PointSet::new(prime(p)?, points)?;
            commands::directions(&s, alpha)?
        }
        Command::HpCheck { p, d, set } => {
            let pm = prime(p)?;
            let a: BTreeSet<_> = set.into_iter().map(|v| pm.element(v)).collect();
            vec![commands::hp_check(pm, &a, d)?]
        }
        Command::Corollary { p, d } => vec![commands::corollary(prime(p)?, d)?],
        Command::Remark2 { p, alpha } => vec![commands::remark2(prime(p)?, alpha)?],
        Command::Sweep(args) => {
            let mut cfg = SweepConfig::new(args.theorem, args.lo, args.hi);
            cfg.workers = args.workers;
            cfg.seed = args.seed;
            cfg.samples = args.samples;
            cfg.k_values = args.k_values;
            cfg.max_set_size = args.max_set_size;
            cfg.max_bivariate_p = max_bivariate_p()?;
            cfg.timings = timings;
            let records = run_sweep(&cfg)?;
            let failed = records.iter().filter(|r| !r.passed).count();
            eprintln!("{} records, {} passed, {} failed", records.len(), records.len() - failed, failed);
            return Ok(records);
        }
    };
    if timings {
        let ms = start.elapsed().as_millis() as u64;
        records.iter_mut().for_each(|r| r.elapsed_ms = Some(ms));
    }
    Ok(records)
}

fn emit(records: &[VerificationRecord], output: &Output) -> Result<(), ForgeError> {
    let text = render(records, output.format)?;
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = run(cli.command, cli.output.timings).and_then(|records| {
        emit(&records, &cli.output)?;
        Ok(verdict(&records))
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
