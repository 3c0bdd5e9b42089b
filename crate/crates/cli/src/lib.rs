//! `redd`: formulas, evaluations, tables, Monte Carlo runs and the
//! verification suite for the expected real ED degree `E(n, p)`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::json;

use redd_core::edd_formula::{
    builtin_fixture, complex_edd, emit_table, expected_redd_eval, expected_redd_symbolic,
    parse_fixture, render_json, render_latex, render_text, Format, MAX_TABLE_N,
};
use redd_core::exact_arith::Rational;
use redd_core::goe_expectations::{abs_det_eval, det_expectation};
use redd_core::monte_carlo::{estimate, Estimand};

use verify::Level;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "redd",
    version,
    about = "Expected real ED degree of Gaussian symmetric tensors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormulaFormat {
    Text,
    Latex,
    Json,
}

impl From<FormulaFormat> for Format {
    fn from(f: FormulaFormat) -> Self {
        match f {
            FormulaFormat::Text => Format::Text,
            FormulaFormat::Latex => Format::Latex,
            FormulaFormat::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ValueFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum McFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EstimandName {
    GoeAbsdet,
    GoeDet,
    ReddGoeRoute,
    ReddGoeRouteRescaled,
    ReddN2,
}

fn default_workers() -> u32 {
    std::thread::available_parallelism()
        .map(|n| n.get() as u32)
        .unwrap_or(1)
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed form of E(n,p) for 2 <= n <= 12.
    Formula {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: FormulaFormat,
    },
    /// Numeric E(n,p); p may be an integer, a fraction a/b or a decimal.
    Eval {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: String,
        #[arg(long, value_enum, default_value = "text")]
        format: ValueFormat,
    },
    /// Complex ED degree D(n,p).
    D {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: ValueFormat,
    },
    /// Table of E(n,p) for n_min <= n <= n_max.
    Table {
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        #[arg(long, default_value_t = 9)]
        n_max: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: FormulaFormat,
    },
    /// Seeded Monte Carlo estimate with its closed-form reference.
    Mc {
        #[arg(value_enum)]
        estimand: EstimandName,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        u: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma2: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, env = "REDD_KIT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = default_workers())]
        workers: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: McFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the verification suite; exit 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value = "fast")]
        level: Level,
        #[arg(long, env = "REDD_KIT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = default_workers())]
        workers: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: ValueFormat,
        #[arg(long)]
        output: Option<PathBuf>,
        /// JSON fixture of published rows replacing the built-in one.
        #[arg(long)]
        reference_fixture: Option<PathBuf>,
    },
}

/// A failure that maps to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Verify,
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Verify) => EXIT_VERIFY,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Formula { n, format } => cmd_formula(n, format, out),
        Command::Eval { n, p, format } => cmd_eval(n, &p, format, out),
        Command::D { n, p, format } => cmd_d(n, p, format, out),
        Command::Table {
            n_min,
            n_max,
            format,
        } => {
            out.write_all(emit_table(n_min, n_max, format.into())?.as_bytes())?;
            Ok(())
        }
        Command::Mc {
            estimand,
            n,
            p,
            u,
            sigma2,
            samples,
            seed,
            workers,
            format,
            output,
        } => {
            let est = build_estimand(estimand, n, p, u, sigma2)?;
            cmd_mc(&est, samples, seed, workers, format, output, out, err)
        }
        Command::Verify {
            level,
            seed,
            workers,
            format,
            output,
            reference_fixture,
        } => cmd_verify(level, seed, workers, format, output, reference_fixture, out),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn cmd_formula(n: u32, format: FormulaFormat, out: &mut dyn Write) -> Outcome {
    if !(2..=MAX_TABLE_N).contains(&n) {
        return Err(usage(format!("n = {n} is outside 2..={MAX_TABLE_N}")));
    }
    let e = expected_redd_symbolic(n)?.expr;
    match format {
        FormulaFormat::Text => writeln!(out, "{}", render_text(&e))?,
        FormulaFormat::Latex => writeln!(out, "{}", render_latex(&e))?,
        FormulaFormat::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&render_json(n, &e))?
        )?,
    }
    Ok(())
}

/// Parses `7`, `7/2` or `3.5` exactly.
fn parse_rational(s: &str) -> Result<Rational, Failure> {
    let bad = || usage(format!("cannot parse p = {s:?} as a rational number"));
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(Rational::new(a, b));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
        return Ok(Rational::new(
            digits,
            BigInt::from(10).pow(frac.len() as u32),
        ));
    }
    Ok(Rational::from_integer(s.parse().map_err(|_| bad())?))
}

fn cmd_eval(n: u32, p: &str, format: ValueFormat, out: &mut dyn Write) -> Outcome {
    let p = parse_rational(p)?;
    if n < 2 || p < Rational::from_integer(2.into()) {
        return Err(usage("eval requires n >= 2 and p >= 2"));
    }
    let v = expected_redd_eval(n, &p)?;
    match format {
        ValueFormat::Text => writeln!(out, "{v:.12}")?,
        ValueFormat::Json => {
            let doc = json!({ "n": n, "p": p.to_string(), "value": v });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?
        }
    }
    Ok(())
}

fn cmd_d(n: u32, p: u64, format: ValueFormat, out: &mut dyn Write) -> Outcome {
    if n < 2 || p < 2 {
        return Err(usage("d requires n >= 2 and p >= 2"));
    }
    let d = complex_edd(n, p);
    match format {
        ValueFormat::Text => writeln!(out, "{d}")?,
        ValueFormat::Json => {
            // Values beyond u64 are written as decimal strings.
            let value = d
                .to_u64()
                .map_or_else(|| json!(d.to_string()), |v| json!(v));
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&json!({ "n": n, "p": p, "value": value }))?
            )?
        }
    }
    Ok(())
}

fn build_estimand(
    name: EstimandName,
    n: Option<usize>,
    p: Option<u64>,
    u: f64,
    sigma2: f64,
) -> Result<Estimand, Failure> {
    let need_n = || n.ok_or_else(|| usage("--n is required for this estimand"));
    let need_p = || p.ok_or_else(|| usage("--p is required for this estimand"));
    Ok(match name {
        EstimandName::GoeAbsdet => Estimand::GoeAbsDet {
            n: need_n()?,
            u,
            sigma2,
        },
        EstimandName::GoeDet => Estimand::GoeDet {
            n: need_n()?,
            u,
            sigma2,
        },
        EstimandName::ReddGoeRoute => Estimand::ReddGoeRoute {
            n: need_n()?,
            p: need_p()?,
        },
        EstimandName::ReddGoeRouteRescaled => Estimand::ReddGoeRouteRescaled {
            n: need_n()?,
            p: need_p()?,
        },
        EstimandName::ReddN2 => Estimand::ReddN2 {
            n: n.unwrap_or(2),
            p: need_p()?,
        },
    })
}

/// Closed-form value of the estimand, when it exists.
fn reference_value(est: &Estimand) -> Option<f64> {
    // det(σB − uI) = σ^n det(B − (u/σ)I) reduces general σ² to σ² = 1.
    let scaled = |n: usize, u: f64, sigma2: f64, f: &dyn Fn(u32, f64) -> f64| {
        let s = sigma2.sqrt();
        s.powi(n as i32) * f(n as u32, u / s)
    };
    match *est {
        Estimand::GoeAbsDet { n, u, sigma2 } => Some(scaled(n, u, sigma2, &abs_det_eval)),
        Estimand::GoeDet { n, u, sigma2 } => {
            Some(scaled(n, u, sigma2, &|n, u| det_expectation(n).eval(u)))
        }
        Estimand::ReddGoeRoute { n, p }
        | Estimand::ReddGoeRouteRescaled { n, p }
        | Estimand::ReddN2 { n, p } => {
            if p < 2 {
                // E(2, 1) = 1: a linear form has one eigenvector class.
                return Some(1.0);
            }
            expected_redd_eval(n as u32, &Rational::from_integer(p.into())).ok()
        }
    }
}

fn z_score(mean: f64, stderr: f64, reference: f64) -> f64 {
    if stderr > 0.0 {
        (mean - reference) / stderr
    } else if mean == reference {
        0.0
    } else {
        f64::INFINITY.copysign(mean - reference)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_mc(
    est: &Estimand,
    samples: u64,
    seed: u64,
    workers: u32,
    format: McFormat,
    output: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    if format == McFormat::Csv && !est.is_count_valued() {
        return Err(usage("csv output is only available for redd-n2"));
    }
    let run = estimate(est, samples, seed, workers)?;
    let r = &run.result;
    let reference = reference_value(est);
    let reference_line =
        reference.map(|v| format!("reference {v}\nz-score {}\n", z_score(r.mean, r.stderr, v)));
    let payload = match format {
        McFormat::Json => format!("{}\n", serde_json::to_string_pretty(&r.to_json())?),
        McFormat::Csv => run
            .histogram
            .as_ref()
            .map(|h| h.to_csv())
            .unwrap_or_default(),
        McFormat::Text => {
            let mut s = format!(
                "estimand {}\nparams {}\nmean {}\nstderr {}\nn_samples {}\nseed {}\nworkers {}\n",
                r.estimand, r.params, r.mean, r.stderr, r.n_samples, r.seed, r.workers
            );
            s.push_str(reference_line.as_deref().unwrap_or(""));
            if let Some(h) = &run.histogram {
                s.push_str("histogram\n");
                for (count, freq) in &h.bins {
                    s.push_str(&format!("  {count} {freq}\n"));
                }
            }
            if run.anomalies > 0 {
                s.push_str(&format!("repeated-root samples {}\n", run.anomalies));
            }
            s
        }
    };
    emit(&payload, output, out)?;
    if format != McFormat::Text {
        if let Some(line) = reference_line {
            err.write_all(line.as_bytes())?;
        }
    }
    Ok(())
}

fn emit(payload: &str, output: Option<PathBuf>, out: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(path) => {
            std::fs::write(&path, payload).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
        None => Ok(out.write_all(payload.as_bytes())?),
    }
}

fn cmd_verify(
    level: Level,
    seed: u64,
    workers: u32,
    format: ValueFormat,
    output: Option<PathBuf>,
    fixture: Option<PathBuf>,
    out: &mut dyn Write,
) -> Outcome {
    if workers == 0 {
        return Err(usage("workers must be at least 1"));
    }
    let rows = match fixture {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            parse_fixture(&text)?
        }
        None => builtin_fixture(),
    };
    let report = verify::run(level, seed, workers, &rows);
    let payload = match format {
        ValueFormat::Text => report.to_text(),
        ValueFormat::Json => format!("{}\n", serde_json::to_string_pretty(&report)?),
    };
    emit(&payload, output, out)?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("redd").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(
            parse_rational("7").unwrap(),
            Rational::from_integer(7.into())
        );
        assert_eq!(
            parse_rational("7/2").unwrap(),
            Rational::new(7.into(), 2.into())
        );
        assert_eq!(
            parse_rational("3.25").unwrap(),
            Rational::new(13.into(), 4.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("3.").is_err());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(
            run_str(&["eval", "--n", "4", "--p", "2"]).1,
            "4.000000000000\n"
        );
        let (code, out, _) = run_str(&["eval", "--n", "4", "--p", "3"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("9.3951169"), "{out}");
        assert_eq!(run_str(&["eval", "--n", "1", "--p", "3"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["eval", "--n", "3", "--p", "3/2"]).0, EXIT_USAGE);
    }

    #[test]
    fn d_example() {
        assert_eq!(
            run_str(&["d", "--n", "4", "--p", "4"]),
            (0, "40\n".into(), String::new())
        );
    }

    #[test]
    fn scaled_reference_matches_unit_variance() {
        let est = Estimand::GoeAbsDet {
            n: 3,
            u: 0.5,
            sigma2: 1.0,
        };
        assert_eq!(reference_value(&est), Some(abs_det_eval(3, 0.5)));
        // n = 1: E|σZ − u| with σ = 2
        let est = Estimand::GoeAbsDet {
            n: 1,
            u: 1.0,
            sigma2: 4.0,
        };
        let want = 2.0 * abs_det_eval(1, 0.5);
        assert!((reference_value(&est).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("formula"));
    }
}
