//! `cleg`: exact computations for small Seifert fibered spaces with
//! complementary legs.
//!
//! Exit codes: 0 success, 1 internal failure (an invariant violation or a
//! failed verification suite), 2 bad input or usage.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cleg::cf::{self, CFString};
use cleg::classify;
use cleg::error::Error;
use cleg::plumbing;
use cleg::rational::{fmt_rational, parse_rational, Rational};
use cleg::seifert::SeifertData;
use cleg::verify::{self, GridSpec, SuiteReport};
use cleg::Sign;

#[derive(Parser)]
#[command(
    name = "cleg",
    version,
    about = "Exact arithmetic for complementary-leg Seifert spaces"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for grid commands; results are re-sorted so parallel
    /// and serial runs match byte for byte.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Continued-fraction calculus on one value or string.
    Cf(CfArgs),
    /// Theta invariants: canonical (from legs) or non-balanced (from e0, p/q).
    Theta(ThetaArgs),
    /// Membership of p/q in the lens-space rational-ball set.
    Rmember { fraction: String },
    /// Smooth and symplectic filling verdicts for one Seifert space.
    Classify(ClassifyArgs),
    /// Run an invariant suite over a grid.
    Verify(VerifyArgs),
    /// Enumerate complementary-leg spaces with verdicts and theta values.
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct CfArgs {
    #[command(subcommand)]
    op: CfOp,
}

#[derive(Subcommand)]
enum CfOp {
    /// Strict expansion of a rational > 1.
    Expand { value: String },
    /// Value of a bracketed string.
    Eval { string: String },
    /// Riemenschneider dual of a strict string.
    Dual { string: String },
    /// Value of the reversed string, p/q*.
    Reverse { string: String },
    /// Complexity count I = sum(entries - 3).
    I { string: String },
    /// Split x = -n + 1/v with v strict or empty.
    Split {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Both sides of the leading-two-run reduction identity.
    Tworun { string: String },
}

#[derive(Args)]
struct ThetaArgs {
    /// Complementary leg string, e.g. "[2,3]".
    #[arg(long)]
    a1: Option<String>,
    /// Central framing plus middle leg, e.g. "[2,2,3]".
    #[arg(long)]
    a2: Option<String>,
    /// Normalized e0 >= 0 for the non-balanced structures.
    #[arg(long)]
    e0: Option<i64>,
    /// Middle-leg reciprocal p/q > 1 for the non-balanced structures.
    #[arg(long)]
    pq: Option<String>,
    /// Which non-balanced structure.
    #[arg(long, value_enum)]
    sign: Option<SignArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Seifert data as "e0;r1,r2,r3", e.g. "-2;1/2,1/3,1/2".
    #[arg(long, allow_hyphen_values = true)]
    seifert: String,
}

#[derive(Args)]
struct GridArgs {
    /// Combined length bound for string pairs.
    #[arg(long, default_value_t = 5)]
    len: usize,
    /// Largest continued-fraction entry.
    #[arg(long, default_value_t = 6)]
    entry: i64,
    /// Largest multiplicity parameter m.
    #[arg(long, default_value_t = 30)]
    m: i64,
    /// Largest index parameter n.
    #[arg(long, default_value_t = 6)]
    n: i64,
    /// Largest lens-space order p.
    #[arg(long, default_value_t = 2500)]
    pmax: i64,
}

impl GridArgs {
    fn to_spec(&self) -> Result<GridSpec, Error> {
        if self.len == 0 || self.entry < 2 || self.m < 1 || self.n < 1 || self.pmax < 4 {
            return Err(Error::Domain(
                "grid bounds must be positive (entry >= 2, pmax >= 4)".into(),
            ));
        }
        Ok(GridSpec {
            max_string_len: self.len,
            max_entry: self.entry,
            m_max: self.m,
            n_max: self.n,
            p_max: self.pmax,
            ..GridSpec::default()
        })
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: cf, lisca, matrix, theta, sections67, classify, or all.
    suite: String,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Row filter, e.g. "symplectic!=None", "smooth=Bounds", "e0<=-2".
    #[arg(long)]
    filter: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be positive");
        return ExitCode::from(2);
    }
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global();
    match run(&cli) {
        Ok(code) => code,
        Err(Error::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Cf(args) => cmd_cf(args, cli.format),
        Command::Theta(args) => cmd_theta(args, cli.format),
        Command::Rmember { fraction } => cmd_rmember(fraction, cli.format),
        Command::Classify(args) => cmd_classify(args, cli.format),
        Command::Verify(args) => cmd_verify(args, cli.format),
        Command::Enumerate(args) => cmd_enumerate(args, cli.format),
    }
}

fn parse_string(s: &str) -> Result<CFString, Error> {
    CFString::from_str(s)
}

fn emit(format: Format, value: serde_json::Value, table: String) -> Result<ExitCode, Error> {
    match format {
        Format::Json => println!("{value}"),
        Format::Table | Format::Csv => println!("{table}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_cf(args: &CfArgs, format: Format) -> Result<ExitCode, Error> {
    let (op, input, result) = match &args.op {
        CfOp::Expand { value } => {
            let r = parse_rational(value)?;
            ("expand", value.clone(), cf::expand(&r)?.to_string())
        }
        CfOp::Eval { string } => {
            let s = parse_string(string)?;
            ("eval", string.clone(), fmt_rational(&s.evaluate()?))
        }
        CfOp::Dual { string } => {
            let s = parse_string(string)?;
            ("dual", string.clone(), s.dual()?.to_string())
        }
        CfOp::Reverse { string } => {
            let s = parse_string(string)?;
            (
                "reverse",
                string.clone(),
                fmt_rational(&s.reversed_value()?),
            )
        }
        CfOp::I { string } => {
            let s = parse_string(string)?;
            ("i", string.clone(), s.i_value().to_string())
        }
        CfOp::Split { value } => {
            let r = parse_rational(value)?;
            let (n, s) = cf::split_framing(&r);
            ("split", value.clone(), format!("n={n} s={s}"))
        }
        CfOp::Tworun { string } => {
            let s = parse_string(string)?;
            let (lhs, rhs) = cf::two_run_reduction(&s)?;
            (
                "tworun",
                string.clone(),
                format!("{} {}", fmt_rational(&lhs), fmt_rational(&rhs)),
            )
        }
    };
    emit(
        format,
        serde_json::json!({ "op": op, "input": input, "result": result.clone() }),
        result,
    )
}

fn cmd_theta(args: &ThetaArgs, format: Format) -> Result<ExitCode, Error> {
    match (&args.a1, &args.a2, args.e0, &args.pq) {
        (Some(a1), Some(a2), None, None) => {
            let a1 = parse_string(a1)?;
            let a2 = parse_string(a2)?;
            let t = plumbing::theta_canonical_checked(&a1, &a2)?;
            let mut v = t.to_json();
            v["a1"] = serde_json::json!(a1.to_string());
            v["a2"] = serde_json::json!(a2.to_string());
            let table = format!(
                "theta={} c1_squared={} sigma={} chi={} d3={}",
                fmt_rational(&t.theta),
                fmt_rational(&t.c1_squared),
                t.sigma,
                t.chi,
                fmt_rational(&t.d3)
            );
            emit(format, v, table)
        }
        (None, None, Some(e0), Some(pq)) => {
            let pq = parse_rational(pq)?;
            let sign = match args.sign {
                Some(SignArg::Plus) => Sign::Plus,
                Some(SignArg::Minus) | None => Sign::Minus,
            };
            let t = plumbing::theta_nonbalanced(e0, &pq, sign)?;
            let v = serde_json::json!({
                "e0": e0,
                "pq": fmt_rational(&pq),
                "sign": sign.name(),
                "theta": fmt_rational(&t),
            });
            emit(format, v, fmt_rational(&t))
        }
        _ => Err(Error::Domain(
            "pass either --a1 and --a2, or --e0 and --pq (optionally --sign)".into(),
        )),
    }
}

fn cmd_rmember(fraction: &str, format: Format) -> Result<ExitCode, Error> {
    let r = parse_rational(fraction)?;
    let p = i64::try_from(r.numer()).map_err(|_| Error::Domain("p too large".into()))?;
    let q = i64::try_from(r.denom()).map_err(|_| Error::Domain("q too large".into()))?;
    let cert = cleg::lisca::membership(p, q)?;
    let v = serde_json::json!({
        "p": p,
        "q": q,
        "member": cert.is_some(),
        "certificate": cert.as_ref().map(|c| c.to_json()),
    });
    let table = match &cert {
        Some(c) => format!(
            "member: m={} target={} family={} h={} sign={}",
            c.m,
            c.witness_target.name(),
            c.family.name(),
            c.h,
            c.sign.name()
        ),
        None => "not a member".to_string(),
    };
    emit(format, v, table)
}

fn parse_seifert(input: &str) -> Result<SeifertData, Error> {
    let (e0s, rest) = input
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("expected \"e0;r1,r2,r3\", got {input:?}")))?;
    let e0: i64 = e0s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad e0 in {input:?}")))?;
    let parts: Vec<&str> = rest.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "expected three coefficients in {input:?}"
        )));
    }
    let r1 = parse_rational(parts[0])?;
    let r2 = parse_rational(parts[1])?;
    let r3 = parse_rational(parts[2])?;
    SeifertData::normalize(e0, [r1, r2, r3])
}

fn cmd_classify(args: &ClassifyArgs, format: Format) -> Result<ExitCode, Error> {
    let y = parse_seifert(&args.seifert)?;
    let verdict = classify::symplectic_verdict(&y)?;
    let fig = y.to_figure2()?;
    let legs = y.leg_structure()?;
    let v = serde_json::json!({
        "seifert": y.to_json(),
        "figure2": fig.to_json(),
        "uniquely_complementary": legs.uniquely_complementary,
        "verdict": verdict.to_json(),
    });
    let table = format!(
        "{y}: smooth={} symplectic={} rule={}",
        verdict.smooth.name(),
        symplectic_label(&verdict.symplectic),
        verdict.rule.name()
    );
    emit(format, v, table)
}

fn symplectic_label(c: &classify::SymplecticCount) -> String {
    use classify::SymplecticCount::*;
    match c {
        None => "None".into(),
        Exactly(k) => format!("Exactly({k})"),
        AtLeast(k) => format!("AtLeast({k})"),
        AtMost(k) => format!("AtMost({k})"),
        Range(lo, hi) => format!("Range({lo},{hi})"),
        OutOfTheoremScope => "OutOfTheoremScope".into(),
    }
}

fn cmd_verify(args: &VerifyArgs, format: Format) -> Result<ExitCode, Error> {
    let grid = args.grid.to_spec()?;
    let names: Vec<&str> = if args.suite == "all" {
        verify::SUITE_NAMES.to_vec()
    } else {
        vec![args.suite.as_str()]
    };
    // reject unknown names before doing any work
    for name in &names {
        if !verify::SUITE_NAMES.contains(name) {
            return Err(Error::Domain(format!(
                "unknown suite {name:?}; expected one of {:?} or \"all\"",
                verify::SUITE_NAMES
            )));
        }
    }
    let pair_count = verify::string_pairs(grid.max_string_len, grid.max_entry).len();
    let string_count = verify::strict_strings(grid.max_string_len, grid.max_entry).len();
    eprintln!(
        "grid: len<={} entry<={} m<={} n<={} pmax<={}; string pairs: {}, strings: {}; suites: {}",
        grid.max_string_len,
        grid.max_entry,
        grid.m_max,
        grid.n_max,
        grid.p_max,
        pair_count,
        string_count,
        names.join(",")
    );
    let mut reports: Vec<(usize, SuiteReport)> = Vec::new();
    if rayon::current_num_threads() > 1 && names.len() > 1 {
        use rayon::prelude::*;
        reports = names
            .par_iter()
            .enumerate()
            .map(|(i, name)| (i, verify::run_suite(name, &grid).unwrap()))
            .collect();
        reports.sort_by_key(|(i, _)| *i);
    } else {
        for (i, name) in names.iter().enumerate() {
            reports.push((i, verify::run_suite(name, &grid)?));
        }
    }

    let mut all_ok = true;
    let mut out_json = Vec::new();
    for (_, report) in &reports {
        all_ok &= report.passed();
        match format {
            Format::Json => out_json.push(serde_json::json!({
                "suite": report.suite,
                "passed": report.passed(),
                "checks": report.checks.iter().map(|c| serde_json::json!({
                    "label": c.label,
                    "instances": c.instances,
                    "failures": c.failures,
                })).collect::<Vec<_>>(),
            })),
            Format::Table | Format::Csv => {
                for c in &report.checks {
                    println!(
                        "{}.{}: {} instances, {} failures{}",
                        report.suite,
                        c.label,
                        c.instances,
                        c.failures.len(),
                        c.failures
                            .first()
                            .map(|f| format!(" (first: {f})"))
                            .unwrap_or_default()
                    );
                }
            }
        }
    }
    if format == Format::Json {
        println!("{}", serde_json::Value::Array(out_json));
    }
    if all_ok {
        Ok(ExitCode::SUCCESS)
    } else {
        let first = reports
            .iter()
            .find_map(|(_, r)| r.first_failure())
            .unwrap_or("unknown");
        eprintln!("verification failed; first counterexample: {first}");
        Ok(ExitCode::from(1))
    }
}

struct Row {
    y: SeifertData,
    verdict: classify::FillingVerdict,
    theta_canonical: Option<Rational>,
    theta_minus: Option<Rational>,
    theta_plus: Option<Rational>,
}

fn build_row(y: SeifertData) -> Result<Row, Error> {
    let verdict = classify::symplectic_verdict(&y)?;
    let theta_canonical = if y.e0() <= -2 {
        let (a1, a2ext) = y.to_plumbing()?;
        Some(plumbing::theta_formula(&a1, &a2ext)?.theta)
    } else {
        None
    };
    let half = cleg::rational::rat(1, 2);
    let dihedral = y.r()[0] == half && y.r()[2] == half;
    let (theta_minus, theta_plus) = if dihedral && y.e0() >= 0 {
        let pq = y.r()[1].recip();
        (
            Some(plumbing::theta_nonbalanced(y.e0(), &pq, Sign::Minus)?),
            Some(plumbing::theta_nonbalanced(y.e0(), &pq, Sign::Plus)?),
        )
    } else {
        (None, None)
    };
    Ok(Row {
        y,
        verdict,
        theta_canonical,
        theta_minus,
        theta_plus,
    })
}

#[derive(Clone, Copy)]
enum FilterKey {
    Symplectic,
    Smooth,
    E0,
}

struct Filter {
    key: FilterKey,
    op: String,
    value: String,
}

fn parse_filter(expr: &str) -> Result<Filter, Error> {
    for op in ["!=", "<=", ">=", "="] {
        if let Some((k, v)) = expr.split_once(op) {
            let key = match k.trim() {
                "symplectic" => FilterKey::Symplectic,
                "smooth" => FilterKey::Smooth,
                "e0" => FilterKey::E0,
                other => {
                    return Err(Error::Parse(format!(
                        "unknown filter key {other:?}; expected symplectic, smooth, or e0"
                    )))
                }
            };
            return Ok(Filter {
                key,
                op: op.to_string(),
                value: v.trim().to_string(),
            });
        }
    }
    Err(Error::Parse(format!("cannot parse filter {expr:?}")))
}

impl Filter {
    fn matches(&self, row: &Row) -> Result<bool, Error> {
        match self.key {
            FilterKey::Symplectic => {
                let label = symplectic_label(&row.verdict.symplectic);
                let is_none = label == "None";
                Ok(match (self.op.as_str(), self.value.as_str()) {
                    ("=", "None") => is_none,
                    ("!=", "None") => !is_none,
                    ("=", v) => label == v,
                    ("!=", v) => label != v,
                    _ => {
                        return Err(Error::Parse(
                            "symplectic supports only = and != comparisons".into(),
                        ))
                    }
                })
            }
            FilterKey::Smooth => {
                let label = row.verdict.smooth.name();
                Ok(match self.op.as_str() {
                    "=" => label == self.value,
                    "!=" => label != self.value,
                    _ => {
                        return Err(Error::Parse(
                            "smooth supports only = and != comparisons".into(),
                        ))
                    }
                })
            }
            FilterKey::E0 => {
                let target: i64 = self
                    .value
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad e0 value {:?}", self.value)))?;
                let e0 = row.y.e0();
                Ok(match self.op.as_str() {
                    "=" => e0 == target,
                    "!=" => e0 != target,
                    "<=" => e0 <= target,
                    ">=" => e0 >= target,
                    _ => unreachable!(),
                })
            }
        }
    }
}

fn cmd_enumerate(args: &EnumerateArgs, format: Format) -> Result<ExitCode, Error> {
    let grid = args.grid.to_spec()?;
    let filter = args.filter.as_deref().map(parse_filter).transpose()?;
    let spaces = verify::classifier_grid(&grid);

    let rows: Vec<Row> = if rayon::current_num_threads() > 1 {
        use rayon::prelude::*;
        let mut rows = spaces
            .into_par_iter()
            .map(build_row)
            .collect::<Result<Vec<_>, _>>()?;
        rows.sort_by(|a, b| {
            (a.y.e0(), &a.y.r()[0], &a.y.r()[1], &a.y.r()[2]).cmp(&(
                b.y.e0(),
                &b.y.r()[0],
                &b.y.r()[1],
                &b.y.r()[2],
            ))
        });
        rows
    } else {
        spaces
            .into_iter()
            .map(build_row)
            .collect::<Result<_, _>>()?
    };

    let fmt_opt = |t: &Option<Rational>| t.as_ref().map(fmt_rational).unwrap_or_default();
    let mut json_rows = Vec::new();
    let mut lines = Vec::new();
    if format == Format::Csv {
        lines.push(
            "e0,r1,r2,r3,smooth,symplectic,rule,theta_canonical,theta_minus,theta_plus".to_string(),
        );
    }
    for row in &rows {
        if let Some(f) = &filter {
            if !f.matches(row)? {
                continue;
            }
        }
        match format {
            Format::Json => json_rows.push(serde_json::json!({
                "seifert": row.y.to_json(),
                "verdict": row.verdict.to_json(),
                "theta_canonical": row.theta_canonical.as_ref().map(fmt_rational),
                "theta_minus": row.theta_minus.as_ref().map(fmt_rational),
                "theta_plus": row.theta_plus.as_ref().map(fmt_rational),
            })),
            Format::Csv => lines.push(format!(
                "{},{},{},{},{},{},{},{},{},{}",
                row.y.e0(),
                fmt_rational(&row.y.r()[0]),
                fmt_rational(&row.y.r()[1]),
                fmt_rational(&row.y.r()[2]),
                row.verdict.smooth.name(),
                symplectic_label(&row.verdict.symplectic),
                row.verdict.rule.name(),
                fmt_opt(&row.theta_canonical),
                fmt_opt(&row.theta_minus),
                fmt_opt(&row.theta_plus),
            )),
            Format::Table => lines.push(format!(
                "{}  smooth={} symplectic={} rule={}{}",
                row.y,
                row.verdict.smooth.name(),
                symplectic_label(&row.verdict.symplectic),
                row.verdict.rule.name(),
                row.theta_canonical
                    .as_ref()
                    .map(|t| format!(" theta_can={}", fmt_rational(t)))
                    .unwrap_or_default(),
            )),
        }
    }
    match format {
        Format::Json => println!("{}", serde_json::Value::Array(json_rows)),
        _ => {
            for l in lines {
                println!("{l}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
