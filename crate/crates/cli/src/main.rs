//! `lambda-modeq`: compute and verify Russell-type modular equations for λ.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 invalid input.

mod cache;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lambda_modeq::arith::AlphaContext;
use lambda_modeq::bpoly::p_poly;
use lambda_modeq::format::{render, Format};
use lambda_modeq::modeq::{
    params_for, scan, theorem52_part1, theorem52_part2, theorem52_part3, verify_all,
    verify_block_determinants, verify_global_vanish, verify_row_moments, verify_symmetry,
    PrimeParams,
};
use lambda_modeq::ode::ode_residual;
use lambda_modeq::qseries::{
    lambda_series, one_minus_lambda_series, xy_normalized_direct, XYParams,
};
use lambda_modeq::report::Report;
use lambda_modeq::{Error, ExactRational};

#[derive(Parser)]
#[command(
    name = "lambda-modeq",
    version,
    about = "Exact modular equations for the lambda function"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficient matrix A_p.
    Matrix {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Run verification checks on A_p.
    Verify {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        /// Comma-separated subset of symmetry, rowsums, dets, theorem52, global.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<CheckKind>,
        /// Truncation order for the global check (default m^2 + 2m).
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Print a q-series through q^order.
    Series {
        #[arg(value_enum)]
        kind: SeriesKind,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        h: Option<u32>,
    },
    /// Evaluate b_l(u, v) for the n belonging to p.
    Bpoly {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        l: u32,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, value_enum, default_value_t = Method::Recurrence)]
        method: Method,
    },
    /// Print alpha_p(k).
    Alpha {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        k: u64,
    },
    /// Print P_s(m).
    Pvals { s: u32, m: u32 },
    /// Check the differential equation for lambda through q^order.
    OdeCheck {
        #[arg(long, default_value_t = 40)]
        order: usize,
    },
    /// Row-1 moment checks for every odd prime up to max-p.
    Scan {
        #[arg(long)]
        max_p: u64,
        #[arg(long, value_enum, default_value_t = ScanFormat::Text)]
        format: ScanFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Structured,
    Typeset,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Text => Format::Text,
            OutFormat::Structured => Format::Structured,
            OutFormat::Typeset => Format::Typeset,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanFormat {
    Text,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Symmetry,
    Rowsums,
    Dets,
    Theorem52,
    Global,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    Lambda,
    OneMinusLambda,
    Xy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Partition,
    Recurrence,
}

/// Failure with the exit code it maps to.
enum Failure {
    Verification(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPrime(_)
            | Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::Dimension(_)
            | Error::AboveThreshold { .. } => Failure::Input(e.to_string()),
            other => Failure::Verification(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Matrix {
            p,
            format,
            out,
            cache_dir,
        } => cmd_matrix(p, format.into(), out, cache_dir),
        Command::Verify {
            p,
            checks,
            order,
            cache_dir,
        } => cmd_verify(p, &checks, order, cache_dir),
        Command::Series {
            kind,
            order,
            p,
            i,
            h,
        } => cmd_series(kind, order, p, i, h),
        Command::Bpoly { p, l, u, v, method } => cmd_bpoly(p, l, &u, &v, method),
        Command::Alpha { p, k } => cmd_alpha(p, k),
        Command::Pvals { s, m } => {
            println!("{}", p_poly(s, m));
            Ok(())
        }
        Command::OdeCheck { order } => cmd_ode_check(order),
        Command::Scan { max_p, format } => cmd_scan(max_p, format),
    }
}

fn cmd_matrix(p: i64, format: Format, out: Option<PathBuf>, cache_dir: Option<PathBuf>) -> Outcome {
    let params = params_for(p)?;
    let a = cache::matrix_for(&params, cache_dir.as_deref())?;
    let text = render(&a, format);
    match out {
        Some(path) => std::fs::write(&path, &text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    let report = verify_symmetry(&a);
    if !report.passed() {
        return Err(Failure::Verification(report.to_string()));
    }
    Ok(())
}

fn cmd_verify(
    p: i64,
    checks: &[CheckKind],
    order: Option<usize>,
    cache_dir: Option<PathBuf>,
) -> Outcome {
    let params = params_for(p)?;
    if checks.contains(&CheckKind::Theorem52) && params.m != 3 {
        return Err(Failure::Input(format!(
            "theorem52 checks apply only when m = 3 (p = {p} has m = {})",
            params.m
        )));
    }
    let a = cache::matrix_for(&params, cache_dir.as_deref())?;
    let report = if checks.is_empty() {
        verify_all(&a, order)?
    } else {
        let mut report = Report::new(format!("verification of A_{p}"));
        for kind in dedup(checks) {
            match kind {
                CheckKind::Symmetry => report.absorb(verify_symmetry(&a)),
                CheckKind::Rowsums => report.absorb(verify_row_moments(&a)),
                CheckKind::Dets => report.absorb(verify_block_determinants(&params)?),
                CheckKind::Theorem52 => {
                    report.absorb(theorem52_part1(&params)?);
                    report.absorb(theorem52_part2(&params)?);
                    report.absorb(theorem52_part3(&params)?);
                }
                CheckKind::Global => {
                    let t = order.unwrap_or_else(|| params.default_vanish_order());
                    report.absorb(verify_global_vanish(&a, t));
                }
            }
        }
        report
    };
    print!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{} check(s) failed",
            report.failures().count()
        )))
    }
}

fn dedup(checks: &[CheckKind]) -> Vec<CheckKind> {
    let mut out = Vec::new();
    for &c in checks {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn cmd_series(
    kind: SeriesKind,
    order: usize,
    p: Option<i64>,
    i: Option<u32>,
    h: Option<u32>,
) -> Outcome {
    let series = match kind {
        SeriesKind::Lambda => {
            if order == 0 {
                return Err(Failure::Input("lambda needs --order >= 1".into()));
            }
            lambda_series(order)
        }
        SeriesKind::OneMinusLambda => one_minus_lambda_series(order),
        SeriesKind::Xy => {
            let (Some(p), Some(i), Some(h)) = (p, i, h) else {
                return Err(Failure::Input("xy needs --p, --i and --h".into()));
            };
            let params: PrimeParams = params_for(p)?;
            if i + h > params.m {
                return Err(Failure::Input(format!(
                    "need i + h <= m = {} (got {})",
                    params.m,
                    i + h
                )));
            }
            xy_normalized_direct(&XYParams::new(params, i, h), order)
        }
    };
    println!("{series}");
    Ok(())
}

fn parse_rational(name: &str, s: &str) -> Result<ExactRational, Failure> {
    s.trim().parse().map_err(|_| {
        Failure::Input(format!(
            "--{name} must be an integer or a fraction a/b (got {s:?})"
        ))
    })
}

fn cmd_bpoly(p: i64, l: u32, u: &str, v: &str, method: Method) -> Outcome {
    let params = params_for(p)?;
    let (u, v) = (parse_rational("u", u)?, parse_rational("v", v)?);
    let bc = params.b_context();
    let value = match method {
        Method::Partition => bc.b_eval(l, &u, &v)?,
        Method::Recurrence => bc.b_eval_fast(l, &u, &v).swap_remove(l as usize),
    };
    println!("{value}");
    Ok(())
}

fn cmd_alpha(p: i64, k: u64) -> Outcome {
    if k == 0 {
        return Err(Failure::Input("k must be at least 1".into()));
    }
    let ctx = AlphaContext::new(params_for(p)?.p)?;
    println!("{}", ctx.alpha(k));
    Ok(())
}

fn cmd_ode_check(order: usize) -> Outcome {
    if order < 10 {
        return Err(Failure::Input(format!(
            "--order must be at least 10 (got {order})"
        )));
    }
    let r = ode_residual(order);
    match r.first_nonzero() {
        None => {
            println!("residual vanishes through q^{}", r.effective_order);
            Ok(())
        }
        Some(k) => Err(Failure::Verification(format!(
            "first nonzero coefficient at q^{k}: {}",
            r.residual.coeff(k)
        ))),
    }
}

fn cmd_scan(max_p: u64, format: ScanFormat) -> Outcome {
    let rows = scan(max_p)?;
    match format {
        ScanFormat::Text => {
            let header = ["p", "m", "n", "sum", "sum(1+2h)", "sum(1+2h)^2", "status"];
            let cells: Vec<[String; 7]> = rows
                .iter()
                .map(|r| {
                    [
                        r.p.to_string(),
                        r.m.to_string(),
                        r.n.to_string(),
                        r.first_moment.clone(),
                        r.second_moment.clone(),
                        r.third_moment.clone(),
                        if r.passed { "ok" } else { "FAIL" }.to_string(),
                    ]
                })
                .collect();
            let mut widths = header.map(str::len);
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |row: &[String]| {
                let parts: Vec<String> = row
                    .iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                println!("{}", parts.join("  "));
            };
            line(&header.map(String::from));
            for row in &cells {
                line(row);
            }
        }
        ScanFormat::Structured => {
            let doc = serde_json::to_string_pretty(&rows).expect("scan rows serialize");
            println!("{doc}");
        }
    }
    let failed: Vec<u64> = rows.iter().filter(|r| !r.passed).map(|r| r.p).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "moment checks failed for p in {failed:?}"
        )))
    }
}
