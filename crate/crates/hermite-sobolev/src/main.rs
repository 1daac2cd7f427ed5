//! Thin command-line front end. All mathematics lives in the library; this
//! binary parses flags, runs one command, writes one table (CSV or JSON) to
//! stdout or a file, prints a one-line verdict to stderr, and exits 0 when
//! every check passed, 1 when a mathematical check failed, 2 on usage or
//! I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rug::Rational;

use hermite_sobolev::mehler_heine::{conjecture_probe, mh_report, ScaledFamily};
use hermite_sobolev::qlambda::TwoByTwoCase;
use hermite_sobolev::real::parse_rational;
use hermite_sobolev::report::{
    hermite_record, mh_rows, resolve_precision, suite_rows, to_csv, to_json, zero_rows,
    OutputFormat, RunConfig,
};
use hermite_sobolev::suites::run_suite;
use hermite_sobolev::zeros::{
    family_zero_table, hermite_zeros, interlace_check, zero_asymptotics_report, zero_case_plan,
};
use hermite_sobolev::{Error, Parity, Result};

#[derive(Parser)]
#[command(
    name = "hermite-sobolev",
    about = "Orthogonal polynomials with derivative masses at the origin: tables and verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Working precision in bits (HERMITE_SOBOLEV_PRECISION_BITS overrides
    /// the default of 256)
    #[arg(long)]
    precision_bits: Option<u32>,
    /// Table format: csv or json
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write the table to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// hermite, q (2x2 mass block), or s (diagonal masses, length 2r)
    #[arg(long)]
    family: String,
    /// Function mass at the origin (family q)
    #[arg(long = "M0", default_value = "0")]
    m0: String,
    /// First-derivative mass (family q)
    #[arg(long = "M1", default_value = "0")]
    m1: String,
    /// Off-diagonal coupling (family q)
    #[arg(long, default_value = "0")]
    lambda: String,
    /// Comma-separated masses, length 2r (family s)
    #[arg(long)]
    masses: Option<String>,
    /// even or odd
    #[arg(long, default_value = "even")]
    parity: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// One classical polynomial record: exact coefficients, norm, value at 0
    Hermite {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Scaled-polynomial trend table against the family's limit function
    Mh {
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated half-degree indices
        #[arg(long, default_value = "25,50,100,200")]
        nlist: String,
        /// Grid points at spacing 0.1 from 0.1
        #[arg(long, default_value_t = 121)]
        grid_points: usize,
        /// Probe the conjectured limit for the all-positive diagonal family
        /// (both parities; informational, exits 0 on any trend)
        #[arg(long)]
        conjecture: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Scaled-zero table with acceleration and Bessel-target trends
    Zeros {
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated half-degree indices
        #[arg(long, default_value = "25,50,100,200")]
        nlist: String,
        /// How many positive zeros to track
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a named verification suite: kernels-oracle, qlambda-oracle,
    /// symmetrize, bessel, or coeff-limits
    Verify {
        suite: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_rat(s: &str, what: &str) -> Result<Rational> {
    parse_rational(s)
        .ok_or_else(|| Error::InvalidArgument(format!("{what} is not a rational: {s:?}")))
}

fn parse_masses(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|m| parse_rat(m, "mass")).collect()
}

fn parse_nlist(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad index {t:?} in nlist")))
        })
        .collect()
}

fn parse_parity(s: &str) -> Result<Parity> {
    match s {
        "even" => Ok(Parity::Even),
        "odd" => Ok(Parity::Odd),
        other => Err(Error::InvalidArgument(format!(
            "parity must be even or odd, got {other:?}"
        ))),
    }
}

fn build_family(args: &FamilyArgs) -> Result<ScaledFamily> {
    let parity = parse_parity(&args.parity)?;
    match args.family.as_str() {
        "hermite" => Ok(ScaledFamily::Hermite { parity }),
        "q" => {
            let case = TwoByTwoCase::new(
                parse_rat(&args.m0, "M0")?,
                parse_rat(&args.m1, "M1")?,
                parse_rat(&args.lambda, "lambda")?,
            )?;
            Ok(ScaledFamily::QLambda { case, parity })
        }
        "s" => {
            let masses = args
                .masses
                .as_deref()
                .ok_or_else(|| Error::InvalidArgument("family s needs --masses".into()))?;
            Ok(ScaledFamily::DiagonalS {
                masses: parse_masses(masses)?,
                parity,
            })
        }
        other => Err(Error::InvalidArgument(format!(
            "family must be hermite, q, or s, got {other:?}"
        ))),
    }
}

fn emit(output: &OutputArgs, csv_text: String, json_text: String) -> Result<()> {
    let format: OutputFormat = output.format.parse()?;
    let text = match format {
        OutputFormat::Csv => csv_text,
        OutputFormat::Json => json_text,
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn config_for(output: &OutputArgs, n_list: Vec<usize>, grid_points: usize) -> Result<RunConfig> {
    let cfg = RunConfig {
        precision_bits: resolve_precision(output.precision_bits)?,
        n_list,
        grid_points,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Grid of `points` points at spacing 1/10 starting from 1/10, exact.
fn tenth_grid(points: usize, prec: u32) -> Vec<hermite_sobolev::Real> {
    (1..=points)
        .map(|i| {
            hermite_sobolev::Real::from_rational(&Rational::from((i as i64, 10)), prec)
        })
        .collect()
}

/// True when every stated zero-trend check holds: accelerated zeros keep
/// falling under the sqrt(n) scaling, targeted zeros approach their Bessel
/// zeros, and any expected imaginary pair shows up with the expected
/// acceleration verdict. Conjecture-regime reports are informational.
fn zeros_pass(
    rep: &hermite_sobolev::zeros::ZeroAsymptoticsReport,
    plan: &hermite_sobolev::zeros::ZeroCasePlan,
) -> bool {
    if rep.conjectured_targets {
        return true;
    }
    let trends_ok = rep.trends.iter().all(|t| {
        if t.accelerated {
            t.sqrt_strictly_decreasing
        } else if let Some(target) = t.target {
            // A scaled column can cross its limit and re-converge, so the
            // command verdict asks less than the monotone `approaching`
            // flag: land within 5% and do not worsen on the last step.
            t.approaching == Some(true) || {
                let errs: Vec<f64> = t
                    .two_sqrt_scaled
                    .iter()
                    .map(|v| (v - target).abs())
                    .collect();
                let slack = 1.0 + hermite_sobolev::mehler_heine::DECREASE_SLACK;
                t.final_rel_err.map(|e| e < 0.05).unwrap_or(false)
                    && errs.len() >= 2
                    && errs[errs.len() - 1] <= errs[errs.len() - 2] * slack
            }
        } else {
            true
        }
    });
    let imag_ok = match plan.expected_imaginary {
        None => true,
        Some((count, accel)) => {
            rep.imaginary_trends.len() == count
                && rep
                    .imaginary_trends
                    .iter()
                    .all(|t| t.accelerating == accel)
        }
    };
    trends_ok && imag_ok
}

/// For the 2x2 diagonal family: zeros interlace with the bare family's when
/// the parity-relevant mass is positive, and coincide when it vanishes.
fn interlacing_holds(fam: &ScaledFamily, n_list: &[usize], prec: u32) -> Result<Option<bool>> {
    let case = match fam {
        ScaledFamily::QLambda { case, .. } if case.is_diagonal() => case,
        _ => return Ok(None),
    };
    let parity = fam.parity();
    let relevant_positive = match parity {
        Parity::Even => *case.m0() > 0,
        Parity::Odd => *case.m1() > 0,
    };
    for &n in n_list {
        let degree = match parity {
            Parity::Even => 2 * n,
            Parity::Odd => 2 * n + 1,
        };
        let q = family_zero_table(fam, n, prec)?;
        let h = hermite_zeros(degree, prec)?;
        let ok = if relevant_positive {
            interlace_check(&q, &h)
        } else {
            q.len() == h.len()
                && q.positive_zeros
                    .iter()
                    .zip(&h.positive_zeros)
                    .all(|(a, b)| (a - b).abs().to_f64() < 1e-30)
        };
        if !ok {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Hermite { n, output } => {
            let cfg = config_for(&output, vec![], 0)?;
            let rec = hermite_record(n, cfg.precision_bits);
            emit(&output, to_csv(&[rec.clone()])?, to_json(&rec)?)?;
            Ok(true)
        }
        Cmd::Mh {
            family,
            nlist,
            grid_points,
            conjecture,
            output,
        } => {
            let cfg = config_for(&output, parse_nlist(&nlist)?, grid_points)?;
            let prec = cfg.precision_bits;
            let grid = tenth_grid(cfg.grid_points, prec);
            if conjecture {
                let masses = family
                    .masses
                    .as_deref()
                    .ok_or_else(|| Error::InvalidArgument("--conjecture needs --masses".into()))?;
                let probe = conjecture_probe(&parse_masses(masses)?, &cfg.n_list, &grid, prec)?;
                let mut rows = mh_rows(&probe.even);
                rows.extend(mh_rows(&probe.odd));
                emit(&output, to_csv(&rows)?, to_json(&probe)?)?;
                for rep in [&probe.even, &probe.odd] {
                    eprintln!(
                        "conjecture {}: sup errors {:?}, decreasing: {}, final below {}: {}",
                        rep.family,
                        rep.sup_errors,
                        rep.decreasing,
                        hermite_sobolev::mehler_heine::FINAL_SUP_BOUND,
                        rep.final_below
                    );
                }
                return Ok(true);
            }
            let fam = build_family(&family)?;
            let rep = mh_report(&fam, &cfg.n_list, &grid, prec)?;
            let pass = rep.passes();
            emit(&output, to_csv(&mh_rows(&rep))?, to_json(&rep)?)?;
            eprintln!(
                "{} vs {}: sup errors {:?}, decreasing {}, final below bound {}, sign ok {}",
                rep.family,
                rep.limit.label(),
                rep.sup_errors,
                rep.decreasing,
                rep.final_below,
                rep.sign_ok
            );
            Ok(pass)
        }
        Cmd::Zeros {
            family,
            nlist,
            kmax,
            output,
        } => {
            let cfg = config_for(&output, parse_nlist(&nlist)?, 0)?;
            let prec = cfg.precision_bits;
            let fam = build_family(&family)?;
            let plan = zero_case_plan(&fam)?;
            let rep = zero_asymptotics_report(&fam, &cfg.n_list, kmax, prec)?;
            let interlace = interlacing_holds(&fam, &cfg.n_list, prec)?;
            let pass = zeros_pass(&rep, &plan) && interlace != Some(false);
            emit(&output, to_csv(&zero_rows(&rep))?, to_json(&rep)?)?;
            for t in &rep.trends {
                eprintln!(
                    "zero {}: accelerated {}, sqrt-scaled decreasing {}, target {:?}, approaching {:?}",
                    t.k, t.accelerated, t.sqrt_strictly_decreasing, t.target, t.approaching
                );
            }
            for t in &rep.imaginary_trends {
                eprintln!(
                    "imaginary pair {}: sqrt-scaled decreasing {}, accelerating {}",
                    t.k, t.strictly_decreasing, t.accelerating
                );
            }
            if let Some(ok) = interlace {
                eprintln!("interlacing with the bare family: {}", if ok { "ok" } else { "violated" });
            }
            if rep.conjectured_targets {
                eprintln!("targets are conjectured; table is informational and exits 0");
            }
            Ok(pass)
        }
        Cmd::Verify { suite, output } => {
            let cfg = config_for(&output, vec![], 0)?;
            let rep = run_suite(&suite, cfg.precision_bits)?;
            let pass = rep.passed();
            let failures = rep.failures().len();
            let total = rep.lines.len();
            emit(&output, to_csv(&suite_rows(&rep))?, to_json(&rep)?)?;
            eprintln!(
                "suite {}: {}/{} checks passed in {:.1}s",
                rep.suite,
                total - failures,
                total,
                rep.elapsed_seconds
            );
            for l in rep.failures() {
                eprintln!("  FAIL {} (observed {:e}, bound {:e})", l.label, l.observed, l.bound);
            }
            Ok(pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                // Bad flags, unusable requests (uncovered cases included),
                // and I/O are usage errors; everything else is a failed
                // mathematical check.
                Error::InvalidArgument(_) | Error::UncoveredCase(_) | Error::Io(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
