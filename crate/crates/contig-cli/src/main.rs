//! `contig` — command-line front end for the contiguous-relation engine.
//!
//! Subcommands: `pq` expands a shifted ₂F₁ over the basis {F, F(a+1)},
//! `relation` emits the three-term relation linking three shifts, `verify`
//! runs the symbolic and series self-check suites, `kummer` computes the
//! exact coefficient pair of the z = −1 evaluation family, and `classfn`
//! reports recurrence equivalence classes.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or parse error,
//! 3 inadmissible specialization.  `CONTIG_FORMAT` presets `--format`;
//! `--out <path>` additionally writes the JSON form of the result.

use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use contig::recurrence::{builtin, BUILTIN_NAMES};
use contig::{
    generated_series_suite, gkummer_check, kummer_p, kummer_q, parse_expr, print_expr,
    series_suite, theorem_suite, three_term, EvalError, Method, PqEngine, Rational, Recurrence,
    ShiftVector, SuiteReport,
};

#[derive(Parser)]
#[command(
    name = "contig",
    version,
    about = "Exact contiguous relations of the Gauss hypergeometric function ₂F₁(a, b; c; z)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand F(a+k, b+l; c+m) over the basis {F, F(a+1)}
    Pq {
        /// Shift of the first upper parameter a
        #[arg(allow_negative_numbers = true)]
        k: i32,
        /// Shift of the second upper parameter b
        #[arg(allow_negative_numbers = true)]
        l: i32,
        /// Shift of the lower parameter c
        #[arg(allow_negative_numbers = true)]
        m: i32,
        /// Computation strategy: auto, path, or dc
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: Method,
        /// Output format: text or json (CONTIG_FORMAT sets the default)
        #[arg(long)]
        format: Option<String>,
        /// Also write the JSON form to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the three-term relation linking three shifted functions
    Relation {
        /// First shift, as a comma-separated triple k,l,m
        #[arg(value_parser = parse_triple, allow_hyphen_values = true)]
        s1: ShiftVector,
        /// Second shift
        #[arg(value_parser = parse_triple, allow_hyphen_values = true)]
        s2: ShiftVector,
        /// Third shift
        #[arg(value_parser = parse_triple, allow_hyphen_values = true)]
        s3: ShiftVector,
        /// Output format: text, json, or latex (CONTIG_FORMAT sets the default)
        #[arg(long)]
        format: Option<String>,
        /// Also write the JSON form to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a self-verification suite (exit code 0 exactly when it passes)
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
    /// Exact coefficients P(n), Q(n) of ₂F₁(a+n, b; a−b; −1) over the two
    /// Γ-quotients, plus a floating-point identity check
    Kummer {
        /// The integer shift n (may be negative)
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Rational value of a for the check, as p/q
        #[arg(long, default_value = "5/3", value_parser = parse_rational, allow_hyphen_values = true)]
        a: Rational,
        /// Rational value of b for the check, as p/q
        #[arg(long, default_value = "-1/4", value_parser = parse_rational, allow_hyphen_values = true)]
        b: Rational,
        /// Also write the JSON form to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equivalence class of a three-term recurrence A(n)·F(n+1) + B(n)·F(n)
    /// + C(n)·F(n−1) = 0 under hypergeometric-term rescaling
    Classfn {
        /// Coefficient A(n) as an expression
        #[arg(long = "A", allow_hyphen_values = true)]
        coeff_a: Option<String>,
        /// Coefficient B(n) as an expression
        #[arg(long = "B", allow_hyphen_values = true)]
        coeff_b: Option<String>,
        /// Coefficient C(n) as an expression
        #[arg(long = "C", allow_hyphen_values = true)]
        coeff_c: Option<String>,
        /// Use a named built-in recurrence instead of --A/--B/--C
        #[arg(long, conflicts_with_all = ["coeff_a", "coeff_b", "coeff_c"])]
        builtin: Option<String>,
        /// Compare against a built-in recurrence and report same_class
        #[arg(long)]
        compare: Option<String>,
        /// Also write the JSON form to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifySuite {
    /// Exact symbolic identities of the basis expansion and its Wronskians
    Theorem {
        /// Half-width of the shift box the box-shaped checks sweep
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i32).range(0..=6))]
        max_shift: i32,
        /// Seed for the randomized checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the JSON report to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Series-oracle residual checks on all built-in and freshly generated
    /// relations
    Series {
        /// Random parameter points per relation
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Series truncation order
        #[arg(long, default_value_t = 20)]
        order: usize,
        /// Seed for point sampling and relation generation
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the JSON report to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with its process exit code.
enum Failure {
    /// Exit 1: a verification suite or identity check failed.
    Verification(String),
    /// Exit 2: arguments or expressions could not be understood.
    Input(String),
    /// Exit 3: the requested specialization does not exist (poles).
    Inadmissible(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
            Failure::Inadmissible(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Input(m) | Failure::Inadmissible(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

/// Write a line to stdout. If the consumer closed the pipe early (e.g.
/// `contig … | head`), exit with the conventional SIGPIPE status instead
/// of panicking.
fn emit(text: impl Display) {
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{text}").is_err() {
        std::process::exit(141);
    }
}

/// Like [`emit`] but without appending a newline.
fn emit_raw(text: impl Display) {
    let mut out = std::io::stdout().lock();
    if write!(out, "{text}").is_err() {
        std::process::exit(141);
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Pq { k, l, m, method, format, out } => cmd_pq(k, l, m, method, format, out),
        Command::Relation { s1, s2, s3, format, out } => cmd_relation(s1, s2, s3, format, out),
        Command::Verify { suite } => match suite {
            VerifySuite::Theorem { max_shift, seed, out } => {
                let report = theorem_suite(PqEngine::global(), max_shift, seed);
                finish_suite(report, out)
            }
            VerifySuite::Series { trials, order, seed, out } => {
                let mut report = series_suite(seed, trials, order);
                let fresh = generated_series_suite(PqEngine::global(), seed, 5, trials, order);
                report.checks.extend(fresh.checks);
                finish_suite(report, out)
            }
        },
        Command::Kummer { n, a, b, out } => cmd_kummer(n, a, b, out),
        Command::Classfn { coeff_a, coeff_b, coeff_c, builtin, compare, out } => {
            cmd_classfn(coeff_a, coeff_b, coeff_c, builtin, compare, out)
        }
    }
}

// ---------------------------------------------------------------------
// argument parsing helpers
// ---------------------------------------------------------------------

fn parse_triple(s: &str) -> Result<ShiftVector, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected a comma-separated triple like 1,0,-1, got `{s}`"));
    }
    let mut v = [0i32; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<i32>()
            .map_err(|_| format!("`{part}` is not an integer shift"))?;
    }
    Ok(ShiftVector::new(v[0], v[1], v[2]))
}

fn parse_method(s: &str) -> Result<Method, String> {
    match s {
        "auto" => Ok(Method::Auto),
        "path" => Ok(Method::Path),
        "dc" => Ok(Method::DivideConquer),
        other => Err(format!("unknown method `{other}` (expected auto, path, or dc)")),
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("expected a rational like 5/3: {e}"))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Latex,
}

fn format_from_name(s: &str) -> Option<Format> {
    match s {
        "text" => Some(Format::Text),
        "json" => Some(Format::Json),
        "latex" => Some(Format::Latex),
        _ => None,
    }
}

/// Resolve the output format: an explicit flag must name a supported
/// format; otherwise `CONTIG_FORMAT` applies when it names one, and the
/// default is text.
fn resolve_format(flag: Option<String>, allowed: &[Format]) -> Result<Format, Failure> {
    if let Some(name) = flag {
        return format_from_name(&name)
            .filter(|f| allowed.contains(f))
            .ok_or_else(|| Failure::Input(format!("unsupported format `{name}`")));
    }
    if let Ok(name) = std::env::var("CONTIG_FORMAT") {
        if let Some(f) = format_from_name(&name).filter(|f| allowed.contains(f)) {
            return Ok(f);
        }
    }
    Ok(Format::Text)
}

fn write_out(out: Option<PathBuf>, json: &serde_json::Value) -> Result<(), Failure> {
    if let Some(path) = out {
        let body = serde_json::to_string_pretty(json).expect("serializable value");
        std::fs::write(&path, body + "\n")
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn to_value<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable value")
}

// ---------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------

fn cmd_pq(
    k: i32,
    l: i32,
    m: i32,
    method: Method,
    format: Option<String>,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let format = resolve_format(format, &[Format::Text, Format::Json])?;
    let pair = PqEngine::global().pq(ShiftVector::new(k, l, m), method);
    let json = to_value(&pair.to_json());
    match format {
        Format::Text => {
            emit(format_args!("P = {}", print_expr(&pair.p)));
            emit(format_args!("Q = {}", print_expr(&pair.q)));
        }
        Format::Json => emit(serde_json::to_string_pretty(&json).unwrap()),
        Format::Latex => unreachable!("latex is not offered for pq"),
    }
    write_out(out, &json)
}

fn cmd_relation(
    s1: ShiftVector,
    s2: ShiftVector,
    s3: ShiftVector,
    format: Option<String>,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let format = resolve_format(format, &[Format::Text, Format::Json, Format::Latex])?;
    let rel = three_term(PqEngine::global(), s1, s2, s3)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let json = to_value(&rel.to_json());
    match format {
        Format::Text => emit(&rel),
        Format::Json => emit(serde_json::to_string_pretty(&json).unwrap()),
        Format::Latex => emit(rel.to_latex()),
    }
    write_out(out, &json)
}

fn suite_json(report: &SuiteReport) -> serde_json::Value {
    serde_json::json!({
        "passed": report.all_passed(),
        "checks": report
            .checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "name": c.name,
                    "passed": c.passed,
                    "cases": c.cases,
                    "detail": c.detail,
                })
            })
            .collect::<Vec<_>>(),
    })
}

fn finish_suite(report: SuiteReport, out: Option<PathBuf>) -> Result<(), Failure> {
    emit_raw(report.render());
    write_out(out, &suite_json(&report))?;
    if report.all_passed() {
        emit(format_args!("ok: {} checks passed", report.checks.len()));
        Ok(())
    } else {
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        Err(Failure::Verification(format!(
            "{failed} of {} checks failed",
            report.checks.len()
        )))
    }
}

fn cmd_kummer(n: i64, a: Rational, b: Rational, out: Option<PathBuf>) -> Result<(), Failure> {
    let p = kummer_p(n);
    let q = kummer_q(n);
    emit(format_args!("P({n}) = {}", print_expr(&p)));
    emit(format_args!("Q({n}) = {}", print_expr(&q)));
    let check = gkummer_check(n, &a, &b).map_err(|e| match e {
        EvalError::Float(err) => Failure::Inadmissible(format!("a = {a}, b = {b}: {err}")),
        other => Failure::Inadmissible(format!("a = {a}, b = {b}: {other}")),
    })?;
    let status = if check.passed { "PASS" } else { "FAIL" };
    emit(format_args!(
        "check at a = {a}, b = {b}: {status} (relative error {:.3e})",
        check.rel_err
    ));
    write_out(
        out,
        &serde_json::json!({
            "n": n,
            "p": print_expr(&p),
            "q": print_expr(&q),
            "check": {
                "a": a.to_string(),
                "b": b.to_string(),
                "lhs": check.lhs,
                "rhs": check.rhs,
                "rel_err": check.rel_err,
                "passed": check.passed,
            },
        }),
    )?;
    if check.passed {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "evaluation mismatch at a = {a}, b = {b}: relative error {:.3e}",
            check.rel_err
        )))
    }
}

fn cmd_classfn(
    coeff_a: Option<String>,
    coeff_b: Option<String>,
    coeff_c: Option<String>,
    builtin_name: Option<String>,
    compare: Option<String>,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let rec = match (builtin_name, coeff_a, coeff_b, coeff_c) {
        (Some(name), None, None, None) => lookup_builtin(&name)?,
        (None, Some(a), Some(b), Some(c)) => {
            let parse = |src: &str| {
                parse_expr(src).map_err(|e| Failure::Input(format!("in `{src}`: {e}")))
            };
            Recurrence::new(parse(&a)?, parse(&b)?, parse(&c)?)
                .map_err(|e| Failure::Input(e.to_string()))?
        }
        _ => {
            return Err(Failure::Input(
                "give either --builtin NAME or all three of --A, --B, --C".into(),
            ))
        }
    };
    let class = rec.class_function();
    emit(format_args!("class = {}", print_expr(&class)));
    let mut same: Option<(String, bool)> = None;
    if let Some(other_name) = compare {
        let other = lookup_builtin(&other_name)?;
        let equal = rec.same_class(&other);
        emit(format_args!("same class as {other_name}: {equal}"));
        same = Some((other_name, equal));
    }
    write_out(
        out,
        &serde_json::json!({
            "class": print_expr(&class),
            "compare": same.as_ref().map(|(name, _)| name.clone()),
            "same_class": same.map(|(_, eq)| eq),
        }),
    )
}

fn lookup_builtin(name: &str) -> Result<Recurrence, Failure> {
    builtin(name).ok_or_else(|| {
        Failure::Input(format!(
            "unknown builtin `{name}` (available: {})",
            BUILTIN_NAMES.join(", ")
        ))
    })
}
