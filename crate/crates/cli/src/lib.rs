//! Command-line front end: `table`, `eval` and `verify`.
//!
//! Argument parsing lives in [`Cli`]; [`run`] does the work and writes to the
//! given streams so tests can drive it without spawning a process.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degenstir::bernoulli::{
    degen_bernoulli_series, trunc_degen_bernoulli_series, trunc_working_precision, BellInput,
};
use degenstir::bernoulli::{bell_partial, k_lambda};
use degenstir::rational::{factorial, int, parse_rational};
use degenstir::stirling::{stirling1_degen, stirling1r_gf, stirling2_degen, stirling2r_gf};
use degenstir::{
    Error, FieldElem, IdentityReport, LambdaMode, Rational, Series, StirlingKind, StirlingTriangle, Verifier,
};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNEQUAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "degenstir", version, about = "Exact degenerate Stirling numbers over Q(λ)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a triangle or sequence.
    Table(TableArgs),
    /// Print a single value.
    Eval(EvalArgs),
    /// Check an identity over a parameter range and print the reports as JSON.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Stirling1,
    Stirling2,
    Stirling2r,
    Stirling1r,
    Bernoulli,
    TruncBernoulli,
    Bell,
    Klambda,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    StirlingRoutes,
    TruncationOne,
    Vanishing,
    Thm3,
    Inversion,
    Basis,
    ClosedForm,
    #[value(alias = "eq17")]
    BernoulliDelta,
    #[value(alias = "eq22")]
    FallingExpansion,
    Klambda,
    KlambdaOnes,
    Bell,
    Thm4,
    Thm5,
    Thm6,
    Thm7,
    Thm8,
}

fn parse_lambda(s: &str) -> Result<LambdaMode, String> {
    if s == "symbolic" {
        return Ok(LambdaMode::Symbolic);
    }
    parse_rational(s)
        .map(LambdaMode::At)
        .map_err(|e| format!("{e}; expected `symbolic` or p/q"))
}

fn parse_rat_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// `symbolic` or a rational `p/q`.
    #[arg(long, default_value = "symbolic", value_parser = parse_lambda)]
    pub lambda: LambdaMode,
    /// Truncation order.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub r: u32,
    /// Bernoulli order.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub alpha: u32,
    /// Polynomial argument for Bernoulli families; constant argument x_l for
    /// bell and klambda. Defaults to 0 and 1 respectively.
    #[arg(long, value_parser = parse_rat_arg)]
    pub x: Option<Rational>,
    /// Override the derived working precision.
    #[arg(long)]
    pub precision: Option<usize>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    /// Defaults to the largest meaningful column.
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    /// Column index: block count for the truncated families; ignored by
    /// bernoulli, trunc-bernoulli and klambda.
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub identity: Identity,
    #[arg(long, default_value = "symbolic", value_parser = parse_lambda)]
    pub lambda: LambdaMode,
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    #[arg(long, default_value_t = 3)]
    pub k_max: usize,
    /// Sweep r over 1..=r-max.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub r_max: u32,
    /// Sweep α over 1..=alpha-max.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub alpha_max: u32,
    /// Treat `as-printed` variants as assertions too.
    #[arg(long)]
    pub assert_printed: bool,
}

/// Parse `args` and run. Usage errors are printed to `err` and map to exit 2.
pub fn main_with<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            code
        }
    }
}

pub fn run(cli: Cli, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let result = match cli.command {
        Command::Table(a) => table(&a, out, err),
        Command::Eval(a) => eval(&a, out, err),
        Command::Verify(a) => verify(&a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
enum RunError {
    Core(Error),
    Io(std::io::Error),
    Json(serde_json::Error),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Core(e) => e.fmt(f),
            RunError::Io(e) => e.fmt(f),
            RunError::Json(e) => e.fmt(f),
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Core(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

impl From<serde_json::Error> for RunError {
    fn from(e: serde_json::Error) -> Self {
        RunError::Json(e)
    }
}

type RunResult<T> = std::result::Result<T, RunError>;

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Stirling1 => "stirling1",
            Family::Stirling2 => "stirling2",
            Family::Stirling2r => "stirling2r",
            Family::Stirling1r => "stirling1r",
            Family::Bernoulli => "bernoulli",
            Family::TruncBernoulli => "trunc-bernoulli",
            Family::Bell => "bell",
            Family::Klambda => "klambda",
        }
    }

    /// Smallest precision that covers every index up to `n_max`.
    fn safe_precision(self, n_max: usize, c: &Common) -> usize {
        match self {
            Family::Bernoulli => n_max + 1,
            Family::TruncBernoulli => trunc_working_precision(n_max, c.r as usize, c.alpha),
            _ => n_max,
        }
    }
}

fn x_value(family: Family, c: &Common) -> FieldElem {
    let default = match family {
        Family::Bell | Family::Klambda => int(1),
        _ => int(0),
    };
    c.lambda.rational(c.x.clone().unwrap_or(default))
}

fn bell_input(family: Family, c: &Common, n: usize) -> BellInput {
    BellInput(vec![x_value(family, c); n])
}

/// `n!·[tⁿ]s` for every `n ≤ n_max`.
fn egf_values(s: &Series, n_max: usize) -> RunResult<Vec<FieldElem>> {
    (0..=n_max)
        .map(|n| Ok(s.coeff(n)?.scale(&Rational::from_integer(factorial(n)))))
        .collect()
}

fn bernoulli_series(family: Family, c: &Common, precision: usize) -> RunResult<Series> {
    let x = x_value(family, c);
    Ok(match family {
        Family::Bernoulli => degen_bernoulli_series(&c.lambda, c.alpha, &x, precision)?,
        _ => trunc_degen_bernoulli_series(&c.lambda, c.r as usize, c.alpha, &x, precision)?,
    })
}

fn precision_for(family: Family, n_max: usize, c: &Common, err: &mut impl Write) -> RunResult<Option<usize>> {
    let safe = family.safe_precision(n_max, c);
    if let Some(p) = c.precision {
        if p < safe {
            writeln!(err, "warning: precision {p} is below the safe bound {safe} for n ≤ {n_max}")?;
        }
    }
    Ok(c.precision)
}

/// Rows `(n, k, value)` in n-then-k order.
fn table_rows(
    family: Family,
    n_max: usize,
    k_max: Option<usize>,
    c: &Common,
    err: &mut impl Write,
) -> RunResult<Vec<(usize, usize, FieldElem)>> {
    let mode = &c.lambda;
    let r = c.r as usize;
    let precision = precision_for(family, n_max, c, err)?;
    let mut rows = Vec::new();
    match family {
        Family::Stirling1 | Family::Stirling2 | Family::Stirling2r | Family::Stirling1r => {
            let r = if matches!(family, Family::Stirling1 | Family::Stirling2) { 1 } else { r };
            let k_max = k_max.unwrap_or(n_max / r);
            match precision {
                None => {
                    let kind = match family {
                        Family::Stirling1 => StirlingKind::FirstDegenerate,
                        Family::Stirling2 => StirlingKind::SecondDegenerate,
                        Family::Stirling2r => StirlingKind::SecondTruncated,
                        _ => StirlingKind::FirstTruncated,
                    };
                    let t = StirlingTriangle::build(mode, kind, r, n_max, k_max);
                    rows.extend(
                        t.rows()
                            .filter(|&(n, k, _)| k * r <= n)
                            .map(|(n, k, v)| (n, k, v.clone())),
                    );
                }
                Some(p) => {
                    for n in 0..=n_max {
                        for k in 0..=k_max.min(n / r) {
                            let v = match family {
                                Family::Stirling1 => stirling1_degen(mode, n, k, p)?,
                                Family::Stirling2 => stirling2_degen(mode, n, k, p)?,
                                Family::Stirling2r => stirling2r_gf(mode, n, k, r, p)?,
                                _ => stirling1r_gf(mode, n, k, r, p)?,
                            };
                            rows.push((n, k, v));
                        }
                    }
                }
            }
        }
        Family::Bernoulli | Family::TruncBernoulli => {
            let p = precision.unwrap_or_else(|| family.safe_precision(n_max, c));
            let values = egf_values(&bernoulli_series(family, c, p)?, n_max)?;
            rows.extend(values.into_iter().enumerate().map(|(n, v)| (n, 0, v)));
        }
        Family::Bell => {
            let xs = bell_input(family, c, n_max.max(1));
            let k_max = k_max.unwrap_or(n_max);
            for n in 0..=n_max {
                for k in 0..=k_max.min(n) {
                    rows.push((n, k, bell_partial(mode, n, k, &xs)?));
                }
            }
        }
        Family::Klambda => {
            let xs = bell_input(family, c, n_max.max(1));
            for n in 0..=n_max {
                rows.push((n, 0, k_lambda(mode, n, &xs)?));
            }
        }
    }
    Ok(rows)
}

#[derive(Serialize)]
struct TableDoc {
    family: &'static str,
    lambda: String,
    entries: Vec<Entry>,
}

#[derive(Serialize)]
struct Entry {
    n: usize,
    k: usize,
    value: String,
}

fn table(a: &TableArgs, out: &mut impl Write, err: &mut impl Write) -> RunResult<i32> {
    let rows = table_rows(a.family, a.n_max, a.k_max, &a.common, err)?;
    match a.format {
        Format::Csv => {
            writeln!(out, "n,k,value")?;
            for (n, k, v) in &rows {
                writeln!(out, "{n},{k},{v}")?;
            }
        }
        Format::Json => {
            let doc = TableDoc {
                family: a.family.name(),
                lambda: a.common.lambda.to_string(),
                entries: rows
                    .iter()
                    .map(|(n, k, v)| Entry { n: *n, k: *k, value: v.to_string() })
                    .collect(),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(EXIT_OK)
}

fn eval(a: &EvalArgs, out: &mut impl Write, err: &mut impl Write) -> RunResult<i32> {
    let c = &a.common;
    let mode = &c.lambda;
    let (n, k, r) = (a.n, a.k, c.r as usize);
    let safe = a.family.safe_precision(n, c);
    let p = precision_for(a.family, n, c, err)?.unwrap_or(safe);
    let value = match a.family {
        Family::Stirling1 => stirling1_degen(mode, n, k, p)?,
        Family::Stirling2 => stirling2_degen(mode, n, k, p)?,
        Family::Stirling2r => stirling2r_gf(mode, n, k, r, p)?,
        Family::Stirling1r => stirling1r_gf(mode, n, k, r, p)?,
        Family::Bernoulli | Family::TruncBernoulli => bernoulli_series(a.family, c, p)?
            .coeff(n)?
            .scale(&Rational::from_integer(factorial(n))),
        Family::Bell => bell_partial(mode, n, k, &bell_input(a.family, c, n.max(1)))?,
        Family::Klambda => k_lambda(mode, n, &bell_input(a.family, c, n.max(1)))?,
    };
    writeln!(out, "{value}")?;
    Ok(EXIT_OK)
}

/// `x_l = l`, a non-constant argument sequence for the Bell-type checks.
fn index_input(mode: &LambdaMode, len: usize) -> BellInput {
    BellInput((1..=len).map(|l| mode.int(l as i64)).collect())
}

fn int_points(n: usize) -> impl Iterator<Item = Rational> {
    (0..=n).map(|x| int(x as i64))
}

/// Poles at a fixed λ make some cells undefined; those are skipped with a
/// note rather than aborting the sweep.
fn collect(
    reports: &mut Vec<IdentityReport>,
    cell: degenstir::Result<Vec<IdentityReport>>,
    what: impl FnOnce() -> String,
    err: &mut impl Write,
) -> RunResult<()> {
    match cell {
        Ok(rs) => reports.extend(rs),
        Err(e @ (Error::ZeroDivisorSeries | Error::PoleAtLambda(_))) => {
            writeln!(err, "skipped {}: {e}", what())?;
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn verify(a: &VerifyArgs, out: &mut impl Write, err: &mut impl Write) -> RunResult<i32> {
    let mut v = Verifier::new(a.lambda.clone());
    let (n_max, k_max) = (a.n_max, a.k_max);
    let r_max = a.r_max as usize;
    let mut reports = Vec::new();
    match a.identity {
        Identity::StirlingRoutes => {
            for r in 1..=r_max {
                for n in 0..=n_max {
                    for k in 0..=k_max {
                        reports.extend(v.verify_stirling_routes(n, k, r));
                    }
                }
            }
        }
        Identity::TruncationOne => {
            for n in 0..=n_max {
                for k in 0..=k_max {
                    reports.push(v.verify_truncation_one(n, k));
                }
            }
        }
        Identity::Vanishing => {
            for r in 1..=r_max {
                for k in 0..=k_max {
                    for n in 0..(k * r).min(n_max + 1) {
                        reports.extend(v.verify_vanishing(n, k, r)?);
                    }
                }
            }
        }
        Identity::Thm3 => {
            for r in 1..=r_max {
                for n in 0..=n_max {
                    for k in 0..=k_max {
                        reports.push(v.verify_thm3(n, k, r));
                    }
                }
            }
        }
        Identity::Inversion => {
            for n in 0..=n_max {
                for m in 0..=n_max {
                    reports.extend(v.verify_inversion(n, m));
                }
            }
        }
        Identity::Basis => {
            for n in 0..=n_max {
                for x in int_points(n) {
                    reports.extend(v.verify_basis(n, &x));
                }
            }
        }
        Identity::ClosedForm => {
            for r in 1..=r_max {
                for n in 0..=n_max.min(2) {
                    for x in int_points(n) {
                        let cell = v.verify_closed_form(n, r, &x);
                        collect(&mut reports, cell, || format!("closed-form n={n} r={r}"), err)?;
                    }
                }
            }
        }
        Identity::BernoulliDelta => {
            for alpha in 1..=a.alpha_max {
                for r in 1..=r_max {
                    let ar = alpha as usize * r;
                    for n in ar..=ar + n_max {
                        let cell = v.verify_bernoulli_delta(alpha, r, n).map(|x| vec![x]);
                        collect(&mut reports, cell, || format!("bernoulli-delta alpha={alpha} r={r} n={n}"), err)?;
                    }
                }
            }
        }
        Identity::FallingExpansion => {
            for r in 1..=r_max {
                for n in 0..=n_max {
                    for x in int_points(n) {
                        let cell = v.verify_falling_expansion(n, r, &x).map(|x| vec![x]);
                        collect(&mut reports, cell, || format!("falling-expansion n={n} r={r}"), err)?;
                    }
                }
            }
        }
        Identity::Klambda => {
            let xs = index_input(&a.lambda, n_max.max(1));
            for n in 0..=n_max {
                reports.push(v.verify_k_lambda(n, &xs)?);
            }
        }
        Identity::KlambdaOnes => {
            for n in 0..=n_max {
                reports.push(v.verify_k_lambda_ones(n)?);
            }
        }
        Identity::Bell => {
            let xs = index_input(&a.lambda, n_max.max(1));
            for n in 0..=n_max {
                for k in 0..=k_max.min(n) {
                    reports.push(v.verify_bell(n, k, &xs)?);
                }
            }
        }
        Identity::Thm4 => {
            for n in 0..=n_max {
                reports.extend(v.verify_thm4(n));
            }
        }
        Identity::Thm5 => {
            for n in 0..=n_max {
                for k in 0..=k_max {
                    reports.extend(v.verify_thm5(n, k));
                }
            }
        }
        Identity::Thm6 => {
            for n in 0..=n_max {
                for k in 1..=k_max {
                    if n >= k {
                        reports.push(v.verify_thm6(n, k)?);
                    } else {
                        let r = v.verify_thm6_unchecked(n, k)?;
                        writeln!(err, "outside n ≥ k: thm6 n={n} k={k} equal={}", r.equal)?;
                    }
                }
            }
        }
        Identity::Thm7 => {
            for n in 0..=n_max {
                for k in 0..=k_max {
                    reports.push(v.verify_thm7(n, k));
                }
            }
        }
        Identity::Thm8 => {
            for n in 0..=n_max {
                for k in 0..=k_max {
                    reports.extend(v.verify_thm8(n, k));
                }
            }
        }
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
    let failed = reports
        .iter()
        .any(|r| (a.assert_printed || r.asserted()) && !r.equal);
    Ok(if failed { EXIT_UNEQUAL } else { EXIT_OK })
}
