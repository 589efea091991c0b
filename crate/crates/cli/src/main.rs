//! `mtzeta`: evaluate Mordell–Tornheim zeta values and ξ functions, tabulate
//! their coefficients, and run the identity checks.
//!
//! Exit codes: 0 success, 1 usage error, 2 computation error or failed check.

mod render;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use mtzeta::identities::{select_cases, CheckConfig, DEFAULT_SLACK, SUITE_IDS};
use mtzeta::mt::{euler_double_zeta, lambda_eval, mt_zeta_fast, xi_mt_eval, xi_mt_g_eval, MtOptions};
use mtzeta::numerics::{working_prec, Complex, ValueWithError};
use mtzeta::series::{akmt_coefficients, IndexVector};
use rayon::prelude::*;

use render::{report_json, report_line, CoeffTable, EvalRecord, Rendered};

#[derive(Parser)]
#[command(name = "mtzeta", version, about = "Mordell–Tornheim zeta values, ξ functions and identity checks")]
struct Cli {
    /// Target precision in bits.
    #[arg(long, global = true, default_value_t = 256, value_parser = clap::value_parser!(u32).range(64..=4096))]
    prec: u32,

    /// Absolute slack added to every check's error budget.
    #[arg(long, global = true, default_value_t = DEFAULT_SLACK, value_parser = parse_slack)]
    slack: f64,

    /// Coefficient cutoff for ζ_MT evaluation (chosen automatically when absent).
    #[arg(long, global = true)]
    mmax: Option<usize>,

    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print C_m for m = 0..count-1 as reduced fractions.
    Coeff {
        /// Index k_1,...,k_r (positive integers).
        #[arg(long, value_parser = parse_positive_index)]
        k: IndexVector,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=2000))]
        count: u64,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
    /// Evaluate one function value.
    Eval {
        #[command(subcommand)]
        kind: EvalKind,
    },
    /// Run identity checks over their default grids.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum EvalKind {
    /// ζ_MT,r(s_1, ..., s_r; s_{r+1}) with integer s_1..s_r.
    Mt {
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u32>,
        #[arg(long, allow_hyphen_values = true, value_parser = check_complex)]
        last: String,
    },
    /// ξ_MT(k; s).
    Xi {
        #[arg(long, value_parser = parse_positive_index)]
        k: IndexVector,
        #[arg(long, allow_hyphen_values = true, value_parser = check_complex)]
        s: String,
    },
    /// ξ_MT,g(k_1, ..., k_g; s); each --k lists entries then the tail exponent.
    Xig {
        #[arg(long, value_parser = parse_tailed_index)]
        k: Vec<IndexVector>,
        #[arg(long, allow_hyphen_values = true, value_parser = check_complex)]
        s: String,
    },
    /// Λ_k(z) for 0 ≤ z < 1; --k lists entries then the tail exponent.
    Lambda {
        #[arg(long, value_parser = parse_tailed_index)]
        k: IndexVector,
        #[arg(long, allow_hyphen_values = true, value_parser = check_real)]
        z: String,
    },
    /// ζ(a, b) = Σ_{n<m} n^{-a} m^{-b}.
    Zeta2 {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity ids, or `all`.
    #[arg(required = true, value_parser = parse_suite)]
    suites: Vec<String>,

    /// Restrict the grids to points with this parameter value (repeatable).
    #[arg(long = "grid", value_parser = parse_filter)]
    grid: Vec<(String, String)>,
}

fn parse_slack(text: &str) -> Result<f64, String> {
    match text.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("`{text}` is not a nonnegative number")),
    }
}

fn parse_positive_index(text: &str) -> Result<IndexVector, String> {
    let index: IndexVector = text.parse().map_err(|e: mtzeta::Error| e.to_string())?;
    index.require_xi().map_err(|e| e.to_string())?;
    Ok(index)
}

fn parse_tailed_index(text: &str) -> Result<IndexVector, String> {
    let index = IndexVector::parse_with_tail(text).map_err(|e| e.to_string())?;
    index.require_lambda().map_err(|e| e.to_string())?;
    Ok(index)
}

fn check_complex(text: &str) -> Result<String, String> {
    Complex::parse(text, 64)
        .map(|_| text.to_string())
        .ok_or_else(|| format!("`{text}` is not a number of the form re, re+imi or p/q"))
}

fn check_real(text: &str) -> Result<String, String> {
    match Complex::parse(text, 64) {
        Some(z) if z.is_real() => Ok(text.to_string()),
        _ => Err(format!("`{text}` is not a real number")),
    }
}

fn parse_suite(text: &str) -> Result<String, String> {
    if text == "all" || SUITE_IDS.contains(&text) {
        Ok(text.to_string())
    } else {
        Err(format!("unknown identity id `{text}`; expected one of: all, {}", SUITE_IDS.join(", ")))
    }
}

fn parse_filter(text: &str) -> Result<(String, String), String> {
    match text.split_once('=') {
        Some((k, v)) if !k.is_empty() && !v.is_empty() => Ok((k.to_string(), v.to_string())),
        _ => Err(format!("`{text}` is not of the form key=value")),
    }
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<mtzeta::Error> for Failure {
    fn from(e: mtzeta::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e4).round() / 10.0
}

fn complex(text: &str, prec: u32) -> Complex {
    Complex::parse(text, working_prec(prec)).expect("validated by the argument parser")
}

fn list_text(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn eval(cli: &Cli, kind: &EvalKind, command: String) -> Result<EvalRecord, Failure> {
    let p = cli.prec;
    let start = Instant::now();
    let (name, label, parameters, value): (_, String, Vec<(String, String)>, ValueWithError) = match kind {
        EvalKind::Mt { exponents, last } => {
            let options = MtOptions { mmax: cli.mmax };
            let v = mt_zeta_fast(exponents, &complex(last, p), p, &options)?;
            let e = list_text(exponents);
            ("mt", format!("ζ_MT({e}; {last})"), vec![("exponents".into(), e), ("last".into(), last.clone())], v)
        }
        EvalKind::Xi { k, s } => {
            let v = xi_mt_eval(k, &complex(s, p), p)?;
            let e = list_text(k.entries());
            ("xi", format!("ξ_MT({e}; {s})"), vec![("k".into(), e), ("s".into(), s.clone())], v)
        }
        EvalKind::Xig { k, s } => {
            let v = xi_mt_g_eval(k, &complex(s, p), p)?;
            let shown: Vec<String> = k.iter().map(|i| i.to_string()).collect();
            let joined = k
                .iter()
                .map(|i| format!("{},{}", list_text(i.entries()), i.tail().unwrap_or_default()))
                .collect::<Vec<_>>()
                .join(";");
            ("xig", format!("ξ_MT,{}({}; {s})", k.len(), shown.join(", ")), vec![("k".into(), joined), ("s".into(), s.clone())], v)
        }
        EvalKind::Lambda { k, z } => {
            let zf = complex(z, p).re;
            let v = lambda_eval(k, &zf, p)?;
            let e = format!("{},{}", list_text(k.entries()), k.tail().unwrap_or_default());
            ("lambda", format!("Λ({k})({z})"), vec![("k".into(), e), ("z".into(), z.clone())], v)
        }
        EvalKind::Zeta2 { a, b } => {
            let v = euler_double_zeta(*a, *b, p)?;
            ("zeta2", format!("ζ({a},{b})"), vec![("a".into(), a.to_string()), ("b".into(), b.to_string())], v)
        }
    };
    Ok(EvalRecord {
        command,
        kind: name,
        label,
        parameters,
        prec: p,
        value: Rendered::new(&value, p),
        elapsed_ms: ms(start),
    })
}

fn run(cli: &Cli, command: String) -> Result<(), Failure> {
    match &cli.command {
        Command::Coeff { k, count, csv } => {
            let start = Instant::now();
            let rows = akmt_coefficients(k, *count as usize - 1)?;
            let table = CoeffTable { command, index: list_text(k.entries()), rows, elapsed_ms: ms(start) };
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&table.json()).expect("serializable"));
            } else if *csv {
                print!("{}", table.csv());
            } else {
                print!("{}", table.text());
            }
            Ok(())
        }
        Command::Eval { kind } => {
            let record = eval(cli, kind, command)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&record.json()).expect("serializable"));
            } else {
                print!("{}", record.text());
            }
            Ok(())
        }
        Command::Verify(args) => verify(cli, args),
    }
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<(), Failure> {
    let mut ids: Vec<&str> = Vec::new();
    for s in &args.suites {
        if s == "all" {
            ids.extend(SUITE_IDS);
        } else {
            ids.push(s);
        }
    }
    let mut seen = std::collections::HashSet::new();
    ids.retain(|id| seen.insert(*id));
    let cases = select_cases(&ids, &args.grid).map_err(|e| Failure::Usage(e.to_string()))?;
    let cfg = CheckConfig::new(cli.prec).with_slack(cli.slack);
    let results: Vec<_> = cases
        .par_iter()
        .map(|case| {
            let start = Instant::now();
            (case.run(&cfg), ms(start))
        })
        .collect();

    let mut passed = 0;
    let mut records = Vec::new();
    let mut errors = Vec::new();
    for (case, (result, elapsed)) in cases.iter().zip(results) {
        match result {
            Ok(report) => {
                passed += report.pass() as usize;
                if cli.json {
                    records.push(report_json(&report, elapsed));
                } else {
                    println!("{}", report_line(&report));
                }
            }
            Err(e) => {
                let params: Vec<String> = case.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
                errors.push(format!("{} {}: {e}", case.suite, params.join(" ")));
            }
        }
    }
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&records).expect("serializable"));
    } else {
        println!("{passed}/{} passed at {} bits", cases.len(), cli.prec);
    }
    if !errors.is_empty() {
        return Err(Failure::Compute(errors.join("\n")));
    }
    if passed < cases.len() {
        return Err(Failure::Compute(format!("{} of {} checks failed", cases.len() - passed, cases.len())));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match run(&cli, command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
