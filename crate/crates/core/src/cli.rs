//! Command-line front end.
//!
//! Exit codes: 0 on success or a passing verification, 1 when a
//! verification fails or a computation errors, 2 on usage errors.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::analysis::{
    abscissa, convexity_report, decimal, f_m_polynomial, fm_consistency, fm_negative_set,
    gm_hm_check, limit_check, scan_abscissae, CSV_HEADER,
};
use crate::oracle::cone_series;
use crate::polyring::{
    bigint_to_json, rational_equal, series_expand, specialize_prime, RationalFnQT,
    TruncatedSeries,
};
use crate::zeta::{
    dstar_zeta, functional_equation_check, grenham_identity_check, local_zeta, zeta_parameters,
    MAX_WEYL_RANK,
};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prime {
    Symbolic,
    Value(i64),
}

impl FromStr for Prime {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "symbolic" {
            return Ok(Prime::Symbolic);
        }
        match s.parse::<i64>() {
            Ok(p) if p >= 2 => Ok(Prime::Value(p)),
            _ => Err(format!("expected an integer >= 2 or 'symbolic', got '{s}'")),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "prozeta", version, about = "Pro-isomorphic zeta functions of the groups Δ(m,n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 10)]
    depth: usize,
    #[arg(long, default_value = "symbolic")]
    prime: Prime,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form local zeta function.
    Zeta {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Also print the power series up to --depth.
        #[arg(long)]
        series: bool,
        #[command(flatten)]
        common: Common,
    },
    /// The n = 2 closed form.
    Dstar {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        series: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run an identity check.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m_max: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Cone-sum series compared with the closed form.
    Oracle {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Abscissa of convergence.
    Abscissa {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Abscissae over a grid.
    Scan {
        #[arg(long, default_value_t = 500)]
        m_max: usize,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, default_value = "0")]
        lo: String,
        #[arg(long, default_value = "80")]
        hi: String,
        #[command(flatten)]
        common: Common,
    },
    /// The polynomial f_m and its sign pattern.
    Fm {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 60)]
        n_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Parameters A_i, B_i and the tilde exponents.
    Params {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    FnEq,
    Dstar,
    Grenham,
    Oracle,
    Relations,
    Convexity,
    Fm,
    Limits,
    CSet,
    All,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::FnEq => "fn-eq",
            Check::Dstar => "dstar",
            Check::Grenham => "grenham",
            Check::Oracle => "oracle",
            Check::Relations => "relations",
            Check::Convexity => "convexity",
            Check::Fm => "fm",
            Check::Limits => "limits",
            Check::CSet => "c-set",
            Check::All => "all",
        }
    }
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Output {
    body: String,
    pass: bool,
}

fn ok(body: String) -> Output {
    Output { body, pass: true }
}

/// Parses `args` (without the program name) and runs the command.
pub fn run<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv = std::iter::once("prozeta").chain(args.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    let target = match &cli.command {
        Command::Zeta { common, .. }
        | Command::Dstar { common, .. }
        | Command::Verify { common, .. }
        | Command::Oracle { common, .. }
        | Command::Abscissa { common, .. }
        | Command::Scan { common, .. }
        | Command::Fm { common, .. }
        | Command::Params { common, .. } => common.out.clone(),
    };
    match dispatch(cli.command) {
        Ok(output) => {
            let written = match target {
                Some(path) => std::fs::write(&path, &output.body)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(output.body.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(msg) = written {
                let _ = writeln!(err, "error: {msg}");
                return 1;
            }
            if output.pass {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check_mn(m: usize, n: usize) -> CliResult<()> {
    if m < 1 {
        return Err(usage(format!("--m must be at least 1, got {m}")));
    }
    if n < 2 {
        return Err(usage(format!("--n must be at least 2, got {n}")));
    }
    Ok(())
}

fn check_weyl(n: usize) -> CliResult<()> {
    if n > MAX_WEYL_RANK {
        return Err(usage(format!("--n must be at most {MAX_WEYL_RANK} for zeta assembly")));
    }
    Ok(())
}

fn reject_format(format: Format, allowed: &[Format]) -> CliResult<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(usage(format!("--format {format:?} is not supported here").to_lowercase()))
    }
}

fn json_doc(query: Value, result: Value, pass: Option<bool>) -> String {
    let mut doc = json!({ "query": query, "result": result });
    if let Some(p) = pass {
        doc["pass"] = json!(p);
    }
    format!("{doc}\n")
}

fn series_json(s: &TruncatedSeries) -> Value {
    Value::Array(
        s.coeffs
            .iter()
            .map(|c| {
                Value::Array(
                    c.terms()
                        .iter()
                        .map(|(&(a, _), coef)| json!([a, bigint_to_json(coef)]))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn render_function(
    query: Value,
    f: &RationalFnQT,
    series: bool,
    common: &Common,
) -> CliResult<Output> {
    reject_format(common.format, &[Format::Text, Format::Latex, Format::Json])?;
    let expansion = if series { Some(series_expand(f, common.depth)?) } else { None };
    if let Prime::Value(p) = common.prime {
        let u = specialize_prime(f, p)?;
        let coeffs = match &expansion {
            Some(_) => Some(u.series_expand(common.depth)?),
            None => None,
        };
        return Ok(ok(match common.format {
            Format::Json => json_doc(
                query,
                json!({
                    "prime": p,
                    "function": u.to_string(),
                    "series": coeffs.map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>()),
                }),
                None,
            ),
            _ => {
                let mut s = format!("{u}\n");
                for (k, c) in coeffs.iter().flatten().enumerate() {
                    let _ = writeln!(s, "t^{k}: {c}");
                }
                s
            }
        }));
    }
    Ok(ok(match common.format {
        Format::Json => {
            let mut result = f.to_json();
            if let Some(s) = &expansion {
                result["series"] = series_json(s);
            }
            json_doc(query, result, None)
        }
        Format::Latex => {
            let mut s = format!("{}\n", f.to_latex());
            if let Some(e) = &expansion {
                s.push_str(&e.to_string());
            }
            s
        }
        _ => {
            let mut s = format!("{f}\n");
            if let Some(e) = &expansion {
                s.push_str(&e.to_string());
            }
            s
        }
    }))
}

#[derive(Clone, Debug)]
struct CheckLine {
    check: &'static str,
    params: Value,
    pass: bool,
    detail: String,
}

fn line(check: &'static str, params: Value, pass: bool, detail: impl Into<String>) -> CheckLine {
    CheckLine { check, params, pass, detail: detail.into() }
}

fn grid(ms: &[usize], ns: &[usize]) -> Vec<(usize, usize)> {
    ms.iter().flat_map(|&m| ns.iter().map(move |&n| (m, n))).collect()
}

fn par_lines<T, F>(items: &[T], f: F) -> CliResult<Vec<CheckLine>>
where
    T: Sync,
    F: Fn(&T) -> CliResult<CheckLine> + Sync + Send,
{
    items.par_iter().map(f).collect()
}

struct Ranges {
    ms: Vec<usize>,
    ns: Vec<usize>,
    m_max: usize,
    n_max: usize,
}

fn ranges(
    m: Option<usize>,
    n: Option<usize>,
    m_max: Option<usize>,
    n_max: Option<usize>,
) -> CliResult<Ranges> {
    let m_max = m_max.unwrap_or(3);
    let n_max = n_max.unwrap_or(4);
    let ms = match m {
        Some(m) => vec![m],
        None => (1..=m_max).collect(),
    };
    let ns = match n {
        Some(n) => vec![n],
        None => (2..=n_max).collect(),
    };
    if ms.iter().any(|&m| m < 1) {
        return Err(usage("--m must be at least 1"));
    }
    if ns.iter().any(|&n| n < 2) {
        return Err(usage("--n must be at least 2"));
    }
    if ms.is_empty() || ns.is_empty() {
        return Err(usage("empty parameter range"));
    }
    Ok(Ranges { ms, ns, m_max, n_max })
}

fn run_check(check: Check, r: &Ranges, depth: usize) -> CliResult<Vec<CheckLine>> {
    let cells = grid(&r.ms, &r.ns);
    match check {
        Check::FnEq => {
            if r.ns.iter().any(|&n| n > 8) {
                return Err(usage("fn-eq supports n <= 8"));
            }
            par_lines(&cells, |&(m, n)| {
                let fe = functional_equation_check(m, n)?;
                Ok(line(
                    "fn-eq",
                    json!({"m": m, "n": n}),
                    fe.holds,
                    format!("sign={:+} a={} b={}", fe.sign, fe.a, fe.b),
                ))
            })
        }
        Check::Dstar => par_lines(&r.ms, |&m| {
            let pass = rational_equal(&local_zeta(m, 2)?, &dstar_zeta(m)?);
            Ok(line("dstar", json!({"m": m}), pass, "local_zeta(m,2) = dstar_zeta(m)"))
        }),
        Check::Grenham => {
            let ns: Vec<usize> = r.ns.iter().copied().filter(|&n| n <= 7).collect();
            if ns.is_empty() {
                return Err(usage("grenham supports 2 <= n <= 7"));
            }
            par_lines(&ns, |&n| {
                let pass = grenham_identity_check(n, depth)?;
                Ok(line("grenham", json!({"n": n, "depth": depth}), pass, "both displays and GL_n identity"))
            })
        }
        Check::Oracle => {
            if r.ns.iter().any(|&n| n > 6) {
                return Err(usage("oracle supports n <= 6"));
            }
            par_lines(&cells, |&(m, n)| {
                let cone = cone_series(m, n, depth)?;
                let closed = series_expand(&local_zeta(m, n)?, depth)?;
                Ok(line(
                    "oracle",
                    json!({"m": m, "n": n, "depth": depth}),
                    cone == closed,
                    "cone sum = closed form",
                ))
            })
        }
        Check::Relations => par_lines(&cells, |&(m, n)| {
            let p = zeta_parameters(m, n)?;
            Ok(line(
                "relations",
                json!({"m": m, "n": n}),
                p.relations_hold() && p.bounds_hold(),
                "tilde relations and bounds",
            ))
        }),
        Check::Convexity => {
            let cells: Vec<(usize, usize)> = cells.into_iter().filter(|&(m, _)| m >= 2).collect();
            if cells.is_empty() {
                return Err(usage("convexity needs m >= 2"));
            }
            par_lines(&cells, |&(m, n)| {
                let rep = convexity_report(m, n)?;
                let d: Vec<String> = rep.d.iter().map(ToString::to_string).collect();
                Ok(line(
                    "convexity",
                    json!({"m": m, "n": n}),
                    rep.holds(),
                    format!(
                        "y_constant={} x1_positive={} d=[{}] max_inequality={}",
                        rep.y_constant,
                        rep.x1_positive,
                        d.join(","),
                        rep.max_inequality
                    ),
                ))
            })
        }
        Check::Fm => {
            let ms: Vec<usize> = r.ms.iter().copied().filter(|&m| m >= 2).collect();
            if ms.is_empty() {
                return Err(usage("fm needs m >= 2"));
            }
            let n_max = r.n_max;
            par_lines(&ms, |&m| {
                let pass = gm_hm_check(m)? && fm_consistency(m, n_max)?;
                Ok(line("fm", json!({"m": m, "n_max": n_max}), pass, "sign of f_m matches exceptional set"))
            })
        }
        Check::Limits => {
            let m_max = r.m_max.max(10);
            par_lines(&r.ns, |&n| {
                let rep = limit_check(n, m_max)?;
                let pass = rep.eventually_monotone && rep.error_at_m_max < BigRational::from_integer(1.into());
                Ok(line(
                    "limits",
                    json!({"n": n, "m_max": m_max}),
                    pass,
                    format!(
                        "limit={} error={} monotone={}",
                        rep.limit,
                        decimal(&rep.error_at_m_max, 12),
                        rep.eventually_monotone
                    ),
                ))
            })
        }
        Check::CSet => {
            let cells: Vec<(usize, usize)> = cells.into_iter().filter(|&(m, _)| m >= 2).collect();
            if cells.is_empty() {
                return Err(usage("c-set needs m >= 2"));
            }
            par_lines(&cells, |&(m, n)| {
                let rep = abscissa(m, n)?;
                Ok(line(
                    "c-set",
                    json!({"m": m, "n": n}),
                    rep.explicit_set_agrees,
                    format!("in_c={}", rep.in_exceptional_set),
                ))
            })
        }
        Check::All => {
            let mut lines = Vec::new();
            for c in [Check::Dstar, Check::Grenham, Check::Oracle, Check::Relations, Check::Convexity] {
                lines.extend(run_check(c, r, depth)?);
            }
            Ok(lines)
        }
    }
}

fn render_checks(query: Value, lines: &[CheckLine], format: Format) -> CliResult<Output> {
    reject_format(format, &[Format::Text, Format::Json])?;
    let pass = lines.iter().all(|l| l.pass);
    let body = match format {
        Format::Json => {
            let result: Vec<Value> = lines
                .iter()
                .map(|l| json!({"check": l.check, "params": l.params, "pass": l.pass, "detail": l.detail}))
                .collect();
            json_doc(query, Value::Array(result), Some(pass))
        }
        _ => {
            let mut s = String::new();
            for l in lines {
                let _ = writeln!(
                    s,
                    "{} {} {} {}",
                    if l.pass { "PASS" } else { "FAIL" },
                    l.check,
                    l.params,
                    l.detail
                );
            }
            let _ = writeln!(s, "{}", if pass { "all checks passed" } else { "some checks failed" });
            s
        }
    };
    Ok(Output { body, pass })
}

fn parse_rational(s: &str) -> CliResult<BigRational> {
    let bad = || usage(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn rational_json(x: &BigRational) -> Value {
    json!({"num": bigint_to_json(x.numer()), "den": bigint_to_json(x.denom()), "decimal": decimal(x, 12)})
}

fn dispatch(command: Command) -> CliResult<Output> {
    match command {
        Command::Zeta { m, n, series, common } => {
            check_mn(m, n)?;
            check_weyl(n)?;
            let query = json!({"command": "zeta", "m": m, "n": n, "depth": common.depth});
            render_function(query, &local_zeta(m, n)?, series, &common)
        }
        Command::Dstar { m, series, common } => {
            check_mn(m, 2)?;
            let query = json!({"command": "dstar", "m": m, "depth": common.depth});
            render_function(query, &dstar_zeta(m)?, series, &common)
        }
        Command::Verify { check, m, n, m_max, n_max, common } => {
            let r = ranges(m, n, m_max, n_max)?;
            let lines = run_check(check, &r, common.depth)?;
            let query = json!({
                "command": "verify",
                "check": check.name(),
                "m": r.ms,
                "n": r.ns,
                "depth": common.depth,
            });
            render_checks(query, &lines, common.format)
        }
        Command::Oracle { m, n, common } => {
            check_mn(m, n)?;
            if n > 6 {
                return Err(usage("oracle supports n <= 6"));
            }
            reject_format(common.format, &[Format::Text, Format::Json])?;
            let cone = cone_series(m, n, common.depth)?;
            let closed = series_expand(&local_zeta(m, n)?, common.depth)?;
            let pass = cone == closed;
            let query = json!({"command": "oracle", "m": m, "n": n, "depth": common.depth});
            let body = match common.format {
                Format::Json => json_doc(query, json!({"series": series_json(&cone)}), Some(pass)),
                _ => format!("{cone}{}\n", if pass { "matches closed form" } else { "DIFFERS from closed form" }),
            };
            Ok(Output { body, pass })
        }
        Command::Abscissa { m, n, common } => {
            check_mn(m, n)?;
            reject_format(common.format, &[Format::Text, Format::Json, Format::Csv])?;
            let r = abscissa(m, n)?;
            let query = json!({"command": "abscissa", "m": m, "n": n});
            let body = match common.format {
                Format::Json => json_doc(
                    query,
                    json!({
                        "alpha": rational_json(&r.alpha),
                        "beta": rational_json(&r.beta),
                        "regime": r.regime.to_string(),
                        "in_exceptional_set": r.in_exceptional_set,
                        "explicit_set_agrees": r.explicit_set_agrees,
                    }),
                    None,
                ),
                Format::Csv => format!(
                    "{CSV_HEADER}\n{},{},{},{},{},{}\n",
                    m,
                    n,
                    r.alpha.numer(),
                    r.alpha.denom(),
                    decimal(&r.alpha, 12),
                    r.regime
                ),
                _ => format!(
                    "alpha = {} ({})\nregime = {}\nbeta = {} ({})\nin exceptional set = {}\nexplicit set agrees = {}\n",
                    r.alpha,
                    decimal(&r.alpha, 12),
                    r.regime,
                    r.beta,
                    decimal(&r.beta, 12),
                    r.in_exceptional_set,
                    r.explicit_set_agrees
                ),
            };
            Ok(ok(body))
        }
        Command::Scan { m_max, n_max, lo, hi, common } => {
            if m_max < 2 || n_max < 2 {
                return Err(usage("--m-max and --n-max must be at least 2"));
            }
            reject_format(common.format, &[Format::Text, Format::Json, Format::Csv])?;
            let (lo, hi) = (parse_rational(&lo)?, parse_rational(&hi)?);
            let rows = scan_abscissae(m_max, n_max, &lo, &hi)?;
            let body = match common.format {
                Format::Json => {
                    let result: Vec<Value> = rows
                        .iter()
                        .map(|r| json!({"m": r.m, "n": r.n, "alpha": rational_json(&r.alpha), "regime": r.regime.to_string()}))
                        .collect();
                    let query = json!({"command": "scan", "m_max": m_max, "n_max": n_max, "lo": lo.to_string(), "hi": hi.to_string()});
                    json_doc(query, Value::Array(result), None)
                }
                _ => {
                    let mut s = format!("{CSV_HEADER}\n");
                    for r in &rows {
                        s.push_str(&r.csv_line());
                        s.push('\n');
                    }
                    s
                }
            };
            Ok(ok(body))
        }
        Command::Fm { m, n_max, common } => {
            if m < 2 {
                return Err(usage("--m must be at least 2 for f_m"));
            }
            reject_format(common.format, &[Format::Text, Format::Json])?;
            let f = f_m_polynomial(m)?;
            let negative = fm_negative_set(m, n_max)?;
            let consistent = fm_consistency(m, n_max)? && gm_hm_check(m)?;
            let query = json!({"command": "fm", "m": m, "n_max": n_max});
            let body = match common.format {
                Format::Json => json_doc(
                    query,
                    json!({
                        "coefficients": f.coefficients().iter().map(bigint_to_json).collect::<Vec<_>>(),
                        "negative_at": negative,
                    }),
                    Some(consistent),
                ),
                _ => format!(
                    "f_{m} = {f}\nnegative for n in {negative:?}\nconsistent with exceptional set: {consistent}\n"
                ),
            };
            Ok(Output { body, pass: consistent })
        }
        Command::Params { m, n, common } => {
            check_mn(m, n)?;
            reject_format(common.format, &[Format::Text, Format::Json, Format::Csv])?;
            let p = zeta_parameters(m, n)?;
            let query = json!({"command": "params", "m": m, "n": n});
            let ints = |v: &[BigInt]| v.iter().map(bigint_to_json).collect::<Vec<_>>();
            let body = match common.format {
                Format::Json => json_doc(
                    query,
                    json!({
                        "A": ints(&p.a),
                        "B": ints(&p.b),
                        "Atilde0": bigint_to_json(&p.atilde0),
                        "Atilden": bigint_to_json(&p.atilden),
                        "Btilde0": bigint_to_json(&p.btilde0),
                        "Btilden": bigint_to_json(&p.btilden),
                        "fe_a": bigint_to_json(&p.fe_a),
                        "fe_b": bigint_to_json(&p.fe_b),
                    }),
                    Some(p.relations_hold()),
                ),
                Format::Csv => {
                    let mut s = String::from("i,A,B\n");
                    for i in 0..=n {
                        let _ = writeln!(s, "{i},{},{}", p.a[i], p.b[i]);
                    }
                    s
                }
                _ => {
                    let mut s = String::new();
                    for i in 0..=n {
                        let _ = writeln!(s, "A_{i} = {}  B_{i} = {}", p.a[i], p.b[i]);
                    }
                    let _ = writeln!(s, "Atilde_0 = {}  Btilde_0 = {}", p.atilde0, p.btilde0);
                    let _ = writeln!(s, "Atilde_n = {}  Btilde_n = {}", p.atilden, p.btilden);
                    let _ = writeln!(s, "functional equation: a = {}  b = {}", p.fe_a, p.fe_b);
                    s
                }
            };
            Ok(ok(body))
        }
    }
}
