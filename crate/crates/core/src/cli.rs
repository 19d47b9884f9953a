//! Command-line front end.
//!
//! Records go to stdout (or `--out PATH`) as JSON lines or CSV; diagnostics
//! go to stderr. Exit codes: 0 all ok, 1 malformed flags, 2 a domain error,
//! 3 a numerical failure (nonconvergence, cancellation, non-finite value) or
//! a failed verification suite.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{Map, Number, Value};

use crate::distribution::{ExtBetaDistribution, DEFAULT_MGF_TERMS};
use crate::error::{Error, Result};
use crate::extbeta::{ext_beta, ext_beta_rep, incomplete_lower, incomplete_upper, ExtBetaParams, Representation};
use crate::hypergeometric::{
    confluent_integral, confluent_integral_alt, confluent_series, gauss_integral, gauss_series,
    ConfluentParams, GaussParams, DEFAULT_MAX_TERMS,
};
use crate::kernel::{kernel_eval, KernelOrder};
use crate::quadrature::QuadConfig;
use crate::verify::{self, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Inclusive evenly spaced grid written `start:stop:count`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:stop:count, got '{s}'"));
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("bad grid bound '{p}': {e}"));
        let (start, stop) = (num(parts[0])?, num(parts[1])?);
        let count: usize = parts[2].trim().parse().map_err(|e| format!("bad grid count '{}': {e}", parts[2]))?;
        if count == 0 || !start.is_finite() || !stop.is_finite() {
            return Err(format!("grid '{s}' needs finite bounds and count >= 1"));
        }
        Ok(Grid { start, stop, count })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "exbeta", version, about = "Extended beta function with a Bessel-Struve kernel")]
pub struct Cli {
    /// Output format for data records.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Write records to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Relative tolerance for quadrature and series truncation.
    #[arg(long, env = "EXBETA_REL_TOL", global = true)]
    pub rel_tol: Option<f64>,
    /// Absolute tolerance for quadrature.
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    /// Hard cap on hypergeometric series terms.
    #[arg(long, default_value_t = DEFAULT_MAX_TERMS, global = true)]
    pub max_terms: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the kernel S_η(t).
    Kernel(KernelArgs),
    /// Evaluate the extended beta function or one of its representations.
    Beta(BetaArgs),
    /// Distribution queries and sampling.
    Dist(DistArgs),
    /// Extended Gauss and confluent hypergeometric functions.
    Hyp(HypArgs),
    /// Run the identity suites and print a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub eta: f64,
    #[arg(long, allow_negative_numbers = true, required_unless_present = "t_grid", conflicts_with = "t_grid")]
    pub t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_grid: Option<Grid>,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct BetaParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub xi1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub xi2: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub p: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub q: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub eta: f64,
}

impl BetaParamArgs {
    fn params(&self) -> Result<ExtBetaParams> {
        ExtBetaParams::with_eta(self.xi1, self.xi2, self.p, self.q, self.eta)
    }

    fn inputs(&self) -> Vec<(&'static str, Value)> {
        vec![
            ("xi1", num(self.xi1)),
            ("xi2", num(self.xi2)),
            ("p", num(self.p)),
            ("q", num(self.q)),
            ("eta", num(self.eta)),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RepArg {
    Direct,
    Trig,
    Semiinf,
    Symmetric,
    Affine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Incomplete {
    Lower,
    Upper,
}

#[derive(Debug, Args)]
pub struct BetaArgs {
    #[command(flatten)]
    pub params: BetaParamArgs,
    #[arg(long, value_enum, default_value = "direct")]
    pub rep: RepArg,
    /// Left end of the affine representation interval.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub a: f64,
    /// Right end of the affine representation interval.
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub c: f64,
    /// Evaluate an incomplete integral instead of the full one.
    #[arg(long, value_enum, requires = "x")]
    pub incomplete: Option<Incomplete>,
    /// Split point for `--incomplete`.
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    /// Tabulate over p; the grid overrides `--p`.
    #[arg(long, allow_hyphen_values = true)]
    pub p_grid: Option<Grid>,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(subcommand)]
    pub action: DistAction,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub params: BetaParamArgs,
    #[arg(long, allow_negative_numbers = true, required_unless_present = "x_grid", conflicts_with = "x_grid")]
    pub x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_grid: Option<Grid>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub params: BetaParamArgs,
    #[arg(long, allow_negative_numbers = true, required_unless_present = "t_grid", conflicts_with = "t_grid")]
    pub t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_grid: Option<Grid>,
    #[arg(long, default_value_t = DEFAULT_MGF_TERMS)]
    pub terms: usize,
}

#[derive(Debug, Args)]
pub struct MomentArgs {
    #[command(flatten)]
    pub params: BetaParamArgs,
    /// Moment order (any real for which the shifted function exists).
    #[arg(long, allow_negative_numbers = true)]
    pub n: f64,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub params: BetaParamArgs,
    /// Number of draws.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum DistAction {
    Pdf(PointArgs),
    Cdf(PointArgs),
    Reliability(PointArgs),
    Moment(MomentArgs),
    Mean(BetaParamArgs),
    Variance(BetaParamArgs),
    Cv(BetaParamArgs),
    Mgf(TransformArgs),
    Charfn(TransformArgs),
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Series,
    Integral,
    /// Reflected integral form (confluent only).
    IntegralAlt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HypKind {
    Gauss,
    Confluent,
}

#[derive(Debug, Args)]
pub struct HypArgs {
    #[arg(value_enum)]
    pub kind: HypKind,
    /// First numerator parameter (Gauss only).
    #[arg(long, allow_negative_numbers = true)]
    pub xi1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub xi2: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub xi3: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub p: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub q: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub eta: f64,
    #[arg(long, allow_negative_numbers = true, required_unless_present = "x_grid", conflicts_with = "x_grid")]
    pub x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_grid: Option<Grid>,
    #[arg(long, value_enum, default_value = "series")]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = verify::DEFAULT_CASES)]
    pub cases: usize,
    /// Replace every suite tolerance with this value.
    #[arg(long)]
    pub tol: Option<f64>,
}

/// Serialized status of one record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Nonconvergent,
    DomainError,
    CancellationLoss,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Nonconvergent => "nonconvergent",
            Status::DomainError => "domain_error",
            Status::CancellationLoss => "cancellation_loss",
        }
    }

    fn of(e: &Error) -> Self {
        match e {
            Error::Domain(_) => Status::DomainError,
            Error::CancellationLoss(_) => Status::CancellationLoss,
            Error::NonConvergence(_) | Error::NonFinite(_) => Status::Nonconvergent,
        }
    }

    fn exit_code(self) -> i32 {
        match self {
            Status::Ok => EXIT_OK,
            Status::DomainError => EXIT_DOMAIN,
            Status::Nonconvergent | Status::CancellationLoss => EXIT_NUMERICAL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Output {
    Real(f64),
    Complex(f64, f64),
}

/// One evaluation: named inputs plus either a value with its error estimate
/// or the error that prevented it.
#[derive(Debug, Clone)]
pub struct OutputRecord {
    inputs: Vec<(&'static str, Value)>,
    outcome: std::result::Result<(Output, f64), Error>,
}

impl OutputRecord {
    pub fn status(&self) -> Status {
        match &self.outcome {
            Ok(_) => Status::Ok,
            Err(e) => Status::of(e),
        }
    }

    fn json(&self) -> String {
        let mut obj = Map::new();
        let inputs: Map<String, Value> = self.inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        obj.insert("inputs".into(), Value::Object(inputs));
        if let Ok((value, err)) = &self.outcome {
            let v = match value {
                Output::Real(x) => num(*x),
                Output::Complex(re, im) => Value::Array(vec![num(*re), num(*im)]),
            };
            obj.insert("value".into(), v);
            obj.insert("error_estimate".into(), num(*err));
        }
        obj.insert("status".into(), Value::String(self.status().as_str().into()));
        Value::Object(obj).to_string()
    }

    fn csv_header(&self, complex: bool) -> String {
        let mut cols: Vec<&str> = self.inputs.iter().map(|(k, _)| *k).collect();
        if complex {
            cols.extend(["value_re", "value_im"]);
        } else {
            cols.push("value");
        }
        cols.extend(["error_estimate", "status"]);
        cols.join(",")
    }

    fn csv(&self, complex: bool) -> String {
        let mut cols: Vec<String> = self.inputs.iter().map(|(_, v)| v.to_string()).collect();
        let blanks = if complex { 3 } else { 2 };
        match &self.outcome {
            Ok((value, err)) => {
                match value {
                    Output::Real(x) => cols.push(num(*x).to_string()),
                    Output::Complex(re, im) => {
                        cols.push(num(*re).to_string());
                        cols.push(num(*im).to_string());
                    }
                }
                cols.push(num(*err).to_string());
            }
            Err(_) => cols.extend(std::iter::repeat_n(String::new(), blanks)),
        }
        cols.push(self.status().as_str().into());
        cols.join(",")
    }
}

/// 17 significant digits, enough to round-trip any f64.
fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&fmt17(x)).expect("formatted float is a JSON number"))
    } else {
        Value::Null
    }
}

fn int(x: usize) -> Value {
    Value::Number(Number::from(x as u64))
}

/// Error budget accepted by the quadrature for a value `v`.
fn quad_budget(v: f64, cfg: &QuadConfig) -> f64 {
    (cfg.rel_tol * v.abs()).max(cfg.abs_tol)
}

fn points(point: Option<f64>, grid: &Option<Grid>) -> Vec<f64> {
    match (point, grid) {
        (_, Some(g)) => g.points(),
        (Some(x), None) => vec![x],
        (None, None) => Vec::new(),
    }
}

fn record(inputs: Vec<(&'static str, Value)>, outcome: Result<(Output, f64)>) -> OutputRecord {
    OutputRecord { inputs, outcome }
}

fn real(v: Result<f64>, cfg: &QuadConfig) -> Result<(Output, f64)> {
    v.map(|x| (Output::Real(x), quad_budget(x, cfg)))
}

struct Settings {
    cfg: QuadConfig,
    max_terms: usize,
}

fn settings(cli: &Cli) -> Result<Settings> {
    let mut cfg = QuadConfig::default();
    if let Some(r) = cli.rel_tol {
        cfg.rel_tol = r;
    }
    if let Some(a) = cli.abs_tol {
        cfg.abs_tol = a;
    }
    cfg.validate()?;
    if cli.max_terms == 0 {
        return Err(Error::domain("--max-terms must be at least 1"));
    }
    Ok(Settings { cfg, max_terms: cli.max_terms })
}

fn cmd_kernel(args: &KernelArgs) -> Vec<OutputRecord> {
    let order = KernelOrder::new(args.eta);
    points(args.t, &args.t_grid)
        .into_par_iter()
        .map(|t| {
            let inputs = vec![("eta", num(args.eta)), ("t", num(t))];
            let outcome = order.clone().and_then(|o| kernel_eval(o, t)).map(|v| (Output::Real(v), v.abs() * 4.0 * f64::EPSILON));
            record(inputs, outcome)
        })
        .collect()
}

fn cmd_beta(args: &BetaArgs, s: &Settings) -> Vec<OutputRecord> {
    let p_values = match &args.p_grid {
        Some(g) => g.points(),
        None => vec![args.params.p],
    };
    let rep = match args.rep {
        RepArg::Direct => None,
        RepArg::Trig => Some(Representation::Trig),
        RepArg::Semiinf => Some(Representation::SemiInfinite),
        RepArg::Symmetric => Some(Representation::Symmetric),
        RepArg::Affine => Some(Representation::Affine { a: args.a, c: args.c }),
    };
    p_values
        .into_par_iter()
        .map(|p| {
            let pa = BetaParamArgs { p, ..args.params };
            let mut inputs = pa.inputs();
            if let Some(kind) = args.incomplete {
                inputs.push(("x", num(args.x.unwrap_or(f64::NAN))));
                let x = args.x.unwrap_or(f64::NAN);
                let v = pa.params().and_then(|params| match kind {
                    Incomplete::Lower => incomplete_lower(&params, x, &s.cfg),
                    Incomplete::Upper => incomplete_upper(&params, x, &s.cfg),
                });
                return record(inputs, real(v, &s.cfg));
            }
            let v = pa.params().and_then(|params| match rep {
                None => ext_beta(&params, &s.cfg),
                Some(r) => ext_beta_rep(&params, r, &s.cfg),
            });
            record(inputs, real(v, &s.cfg))
        })
        .collect()
}

fn distribution(pa: &BetaParamArgs, s: &Settings) -> Result<ExtBetaDistribution> {
    ExtBetaDistribution::new(pa.params()?, s.cfg)
}

fn failed_all(inputs: Vec<Vec<(&'static str, Value)>>, e: &Error) -> Vec<OutputRecord> {
    inputs.into_iter().map(|i| record(i, Err(e.clone()))).collect()
}

fn cmd_dist(action: &DistAction, s: &Settings) -> (Vec<OutputRecord>, bool) {
    let cfg = &s.cfg;
    match action {
        DistAction::Pdf(a) | DistAction::Cdf(a) | DistAction::Reliability(a) => {
            let xs = points(a.x, &a.x_grid);
            let with_x = |x: f64| {
                let mut i = a.params.inputs();
                i.push(("x", num(x)));
                i
            };
            let d = match distribution(&a.params, s) {
                Ok(d) => d,
                Err(e) => return (failed_all(xs.into_iter().map(with_x).collect(), &e), false),
            };
            let rows = xs
                .into_par_iter()
                .map(|x| {
                    let v = match action {
                        DistAction::Pdf(_) => d.pdf(x),
                        DistAction::Cdf(_) => d.cdf(x),
                        _ => d.reliability(x),
                    };
                    record(with_x(x), real(v, cfg))
                })
                .collect();
            (rows, false)
        }
        DistAction::Moment(a) => {
            let mut inputs = a.params.inputs();
            inputs.push(("n", num(a.n)));
            let v = distribution(&a.params, s).and_then(|d| d.moment(a.n));
            (vec![record(inputs, real(v, cfg))], false)
        }
        DistAction::Mean(pa) | DistAction::Variance(pa) | DistAction::Cv(pa) => {
            let v = distribution(pa, s).and_then(|d| match action {
                DistAction::Mean(_) => d.mean(),
                DistAction::Variance(_) => d.variance(),
                _ => d.coeff_variation(),
            });
            (vec![record(pa.inputs(), real(v, cfg))], false)
        }
        DistAction::Mgf(a) | DistAction::Charfn(a) => {
            let complex = matches!(action, DistAction::Charfn(_));
            let ts = points(a.t, &a.t_grid);
            let with_t = |t: f64| {
                let mut i = a.params.inputs();
                i.push(("t", num(t)));
                i.push(("terms", int(a.terms)));
                i
            };
            let d = match distribution(&a.params, s) {
                Ok(d) => d,
                Err(e) => return (failed_all(ts.into_iter().map(with_t).collect(), &e), complex),
            };
            let rows = ts
                .into_par_iter()
                .map(|t| {
                    let outcome = if complex {
                        d.char_fn(t, a.terms).and_then(|z| {
                            let tail = d.mgf(t.abs(), a.terms)?.tail_estimate;
                            Ok((Output::Complex(z.re, z.im), tail))
                        })
                    } else {
                        d.mgf(t, a.terms).map(|r| (Output::Real(r.value), r.tail_estimate))
                    };
                    record(with_t(t), outcome)
                })
                .collect();
            (rows, complex)
        }
        DistAction::Sample(a) => {
            let with_i = |i: usize| {
                let mut inputs = a.params.inputs();
                inputs.push(("seed", Value::Number(Number::from(a.seed))));
                inputs.push(("index", int(i)));
                inputs
            };
            let draws = distribution(&a.params, s).and_then(|d| d.sample(a.n, a.seed));
            let rows = match draws {
                Ok(v) => v
                    .into_iter()
                    .enumerate()
                    .map(|(i, x)| record(with_i(i), Ok((Output::Real(x), 0.0))))
                    .collect(),
                Err(e) => vec![record(with_i(0), Err(e))],
            };
            (rows, false)
        }
    }
}

fn cmd_hyp(args: &HypArgs, s: &Settings) -> Vec<OutputRecord> {
    let xs = points(args.x, &args.x_grid);
    xs.into_par_iter()
        .map(|x| {
            let mut inputs = Vec::new();
            if let Some(a) = args.xi1 {
                inputs.push(("xi1", num(a)));
            }
            inputs.extend([
                ("xi2", num(args.xi2)),
                ("xi3", num(args.xi3)),
                ("p", num(args.p)),
                ("q", num(args.q)),
                ("eta", num(args.eta)),
                ("x", num(x)),
            ]);
            let outcome = match args.kind {
                HypKind::Gauss => hyp_gauss(args, x, s),
                HypKind::Confluent => hyp_confluent(args, x, s),
            };
            record(inputs, outcome)
        })
        .collect()
}

fn hyp_gauss(args: &HypArgs, x: f64, s: &Settings) -> Result<(Output, f64)> {
    let xi1 = args.xi1.ok_or_else(|| Error::domain("gauss needs --xi1"))?;
    let gp = GaussParams::with_eta(xi1, args.xi2, args.xi3, args.p, args.q, args.eta)?;
    match args.method {
        Method::Series => {
            if !(x.abs() < 1.0) {
                return Err(Error::domain(format!("Gauss series needs |x| < 1, got {x}")));
            }
            gauss_series(&gp, x, s.max_terms, &s.cfg).map(|r| (Output::Real(r.value), r.tail_estimate))
        }
        Method::Integral => real(gauss_integral(&gp, x, &s.cfg), &s.cfg),
        Method::IntegralAlt => Err(Error::domain("integral-alt applies to the confluent function only")),
    }
}

fn hyp_confluent(args: &HypArgs, x: f64, s: &Settings) -> Result<(Output, f64)> {
    let cp = ConfluentParams::with_eta(args.xi2, args.xi3, args.p, args.q, args.eta)?;
    match args.method {
        Method::Series => confluent_series(&cp, x, s.max_terms, &s.cfg).map(|r| (Output::Real(r.value), r.tail_estimate)),
        Method::Integral => real(confluent_integral(&cp, x, &s.cfg), &s.cfg),
        Method::IntegralAlt => real(confluent_integral_alt(&cp, x, &s.cfg), &s.cfg),
    }
}

fn render(records: &[OutputRecord], format: Format, complex: bool) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            for r in records {
                out.push_str(&r.json());
                out.push('\n');
            }
        }
        Format::Csv => {
            if let Some(first) = records.first() {
                out.push_str(&first.csv_header(complex));
                out.push('\n');
            }
            for r in records {
                out.push_str(&r.csv(complex));
                out.push('\n');
            }
        }
    }
    out
}

fn emit(text: &str, out: &Option<PathBuf>) -> i32 {
    let result = match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush())
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("exbeta: cannot write output: {e}");
            EXIT_USAGE
        }
    }
}

fn exit_code(records: &[OutputRecord]) -> i32 {
    records.iter().map(|r| r.status().exit_code()).max().unwrap_or(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let s = match settings(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("exbeta: {e}");
            return EXIT_USAGE;
        }
    };
    let (records, complex) = match &cli.command {
        Command::Kernel(a) => (cmd_kernel(a), false),
        Command::Beta(a) => (cmd_beta(a, &s), false),
        Command::Dist(a) => cmd_dist(&a.action, &s),
        Command::Hyp(a) => (cmd_hyp(a, &s), false),
        Command::Verify(a) => {
            let opts = VerifyOptions {
                seed: a.seed,
                cases: a.cases,
                tol_override: a.tol,
                cfg: s.cfg,
                max_terms: s.max_terms,
            };
            let report = verify::run(&opts);
            let write = emit(&report.render(a.seed, a.cases), &cli.out);
            if write != EXIT_OK {
                return write;
            }
            return if report.all_passed() { EXIT_OK } else { EXIT_NUMERICAL };
        }
    };
    for r in &records {
        if let Err(e) = &r.outcome {
            eprintln!("exbeta: {e}");
        }
    }
    let write = emit(&render(&records, cli.format, complex), &cli.out);
    if write != EXIT_OK {
        return write;
    }
    exit_code(&records)
}
