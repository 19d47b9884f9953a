//! Double-exponential quadrature over finite and half-infinite intervals.
//!
//! Finite intervals use the tanh-sinh map `x = tanh(π/2 · sinh s)`; the
//! half line uses exp-sinh `w = a + exp(π/2 · sinh s)`. Each refinement
//! level halves the step in `s` and only evaluates the new odd nodes. Node
//! tables are built once per level and shared read-only.
//!
//! Integrands may receive an [`Abscissa`] carrying the distances to both
//! endpoints, computed from the node complements rather than by
//! subtraction, so factors like `(1 - y)^(β-1)` keep full relative
//! precision next to `y = 1`.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::series::CompensatedSum;

/// Largest refinement level a [`QuadConfig`] may request.
pub const LEVEL_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_levels: usize,
    pub max_evals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_levels: 12,
            max_evals: 2_000_000,
        }
    }
}

impl QuadConfig {
    pub fn new(rel_tol: f64, abs_tol: f64, max_levels: usize, max_evals: usize) -> Result<Self> {
        let cfg = Self {
            rel_tol,
            abs_tol,
            max_levels,
            max_evals,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        Self { rel_tol, ..self }
    }

    pub fn with_abs_tol(self, abs_tol: f64) -> Self {
        Self { abs_tol, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if self.max_levels < 3 || self.max_levels > LEVEL_CAP {
            return Err(Error::domain(format!(
                "max_levels must lie in [3, {LEVEL_CAP}], got {}",
                self.max_levels
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// `|I_k - I_{k-1}|` for the last two refinement levels.
    pub error_estimate: f64,
    pub evals: usize,
}

/// A quadrature node as seen by the integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    /// `x - a`, accurate even when tiny.
    pub from_lower: f64,
    /// `b - x`, accurate even when tiny; infinite on the half line.
    pub to_upper: f64,
}

/// Minimum level at which the level-difference test may declare convergence.
const MIN_LEVEL: usize = 3;
/// Contributions below this fraction of the previous estimate end a tail scan.
const TAIL_CUT: f64 = 1e-18;
/// Tail scans are never cut before this value of `s`.
const TAIL_CUT_START: f64 = 2.0;

#[derive(Debug, Clone, Copy)]
struct Node {
    s: f64,
    /// Distance from the nearer endpoint in units of the half-width (tanh-sinh),
    /// or `exp(u)` (exp-sinh).
    offset: f64,
    weight: f64,
}

/// Nodes for one level, ordered by increasing `s` (all `s >= 0` for tanh-sinh).
struct Level {
    nodes: Vec<Node>,
}

fn level_steps(level: usize) -> (f64, usize, usize) {
    // (step h, first multiple, stride)
    if level == 0 {
        (1.0, 0, 1)
    } else {
        (0.5f64.powi(level as i32), 1, 2)
    }
}

fn tanh_sinh_level(level: usize) -> &'static Level {
    static TABLES: [OnceLock<Level>; LEVEL_CAP + 1] = [const { OnceLock::new() }; LEVEL_CAP + 1];
    TABLES[level].get_or_init(|| {
        let (h, first, stride) = level_steps(level);
        let mut nodes = Vec::new();
        let mut k = first;
        loop {
            let s = k as f64 * h;
            let u = FRAC_PI_2 * s.sinh();
            let cu = u.cosh();
            // 1 - tanh(u) = exp(-u) / cosh(u)
            let offset = (-u).exp() / cu;
            if !(offset > 1e-300) {
                break;
            }
            let weight = FRAC_PI_2 * s.cosh() / (cu * cu);
            nodes.push(Node { s, offset, weight });
            k += stride;
        }
        Level { nodes }
    })
}

fn exp_sinh_level(level: usize) -> &'static Level {
    static TABLES: [OnceLock<Level>; LEVEL_CAP + 1] = [const { OnceLock::new() }; LEVEL_CAP + 1];
    TABLES[level].get_or_init(|| {
        let (h, first, stride) = level_steps(level);
        let mut nodes = Vec::new();
        let mut k = first;
        loop {
            let s = k as f64 * h;
            let u = FRAC_PI_2 * s.sinh();
            if u > 700.0 {
                break;
            }
            let weight = FRAC_PI_2 * s.cosh();
            nodes.push(Node {
                s,
                offset: u.exp(),
                weight,
            });
            k += stride;
        }
        Level { nodes }
    })
}

/// Walks one half of a level outward, cutting the scan once contributions
/// are negligible relative to `scale`.
fn scan_side<G>(
    nodes: &[Node],
    skip_center: bool,
    scale: Option<f64>,
    evals: &mut usize,
    acc: &mut CompensatedSum,
    mut contribution: G,
) -> Result<()>
where
    G: FnMut(&Node) -> Result<f64>,
{
    let mut quiet = 0;
    for node in nodes {
        if skip_center && node.s == 0.0 {
            continue;
        }
        let c = contribution(node)?;
        *evals += 1;
        if !c.is_finite() {
            return Err(Error::NonFinite(format!("integrand is {c} at node s = {}", node.s)));
        }
        acc.add(c);
        if let Some(scale) = scale {
            if node.s > TAIL_CUT_START && c.abs() <= TAIL_CUT * scale {
                quiet += 1;
                if quiet >= 2 {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
    }
    Ok(())
}

fn refine<L, S>(cfg: &QuadConfig, level_table: L, mut level_sum: S) -> Result<QuadResult>
where
    L: Fn(usize) -> &'static Level,
    S: FnMut(&Level, Option<f64>, &mut usize) -> Result<f64>,
{
    cfg.validate()?;
    let mut evals = 0usize;
    let mut raw = CompensatedSum::new();
    let mut previous: Option<f64> = None;
    let mut last_err = f64::INFINITY;
    for level in 0..cfg.max_levels {
        let (h, _, _) = level_steps(level);
        // Previous estimate in the units of a raw level sum.
        let scale = previous.map(|p| p.abs() / h);
        raw.add(level_sum(level_table(level), scale, &mut evals)?);
        let estimate = h * raw.value();
        if let Some(prev) = previous {
            last_err = (estimate - prev).abs();
            let tol = (cfg.rel_tol * estimate.abs()).max(cfg.abs_tol);
            if level >= MIN_LEVEL && last_err <= tol {
                return Ok(QuadResult {
                    value: estimate,
                    error_estimate: last_err,
                    evals,
                });
            }
        }
        if evals > cfg.max_evals {
            return Err(Error::non_convergence(format!(
                "quadrature used {evals} evaluations (limit {}), last error estimate {last_err:e}",
                cfg.max_evals
            )));
        }
        previous = Some(estimate);
    }
    Err(Error::non_convergence(format!(
        "quadrature did not converge in {} levels, last error estimate {last_err:e}",
        cfg.max_levels
    )))
}

/// Integrates a fallible offset-aware integrand over `(a, b)`.
///
/// Nodes whose offset from an endpoint underflows to zero are discarded.
pub fn try_integrate_finite_with<F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(Abscissa) -> Result<f64>,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!("need finite a < b, got ({a}, {b})")));
    }
    let half = 0.5 * (b - a);
    let width = b - a;
    let mid = a + half;
    refine(cfg, tanh_sinh_level, |table, scale, evals| {
        let mut acc = CompensatedSum::new();
        let scale = scale.map(|s| s / half);
        // Left half, s -> -s.
        scan_side(&table.nodes, false, scale, evals, &mut acc, |node| {
            let d = half * node.offset;
            if d == 0.0 {
                return Ok(0.0);
            }
            let at = if node.s == 0.0 {
                Abscissa {
                    x: mid,
                    from_lower: half,
                    to_upper: half,
                }
            } else {
                Abscissa {
                    x: a + d,
                    from_lower: d,
                    to_upper: width - d,
                }
            };
            Ok(node.weight * f(at)?)
        })?;
        scan_side(&table.nodes, true, scale, evals, &mut acc, |node| {
            let d = half * node.offset;
            if d == 0.0 {
                return Ok(0.0);
            }
            let at = Abscissa {
                x: b - d,
                from_lower: width - d,
                to_upper: d,
            };
            Ok(node.weight * f(at)?)
        })?;
        Ok(half * acc.value())
    })
}

pub fn integrate_finite_with<F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(Abscissa) -> f64,
{
    try_integrate_finite_with(|at| Ok(f(at)), a, b, cfg)
}

/// Fallible tanh-sinh integration of `f` over `(a, b)`.
pub fn try_integrate_finite<F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64>,
{
    try_integrate_finite_with(
        |at| {
            if at.x <= a || at.x >= b {
                Ok(0.0)
            } else {
                f(at.x)
            }
        },
        a,
        b,
        cfg,
    )
}

/// Tanh-sinh integration of `f` over `(a, b)`; endpoints are never sampled.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    try_integrate_finite(|x| Ok(f(x)), a, b, cfg)
}

/// Fallible exp-sinh integration of `f` over `(a, ∞)`.
pub fn try_integrate_semi_infinite_with<F>(f: F, a: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(Abscissa) -> Result<f64>,
{
    if !a.is_finite() {
        return Err(Error::domain("lower limit must be finite"));
    }
    refine(cfg, exp_sinh_level, |table, scale, evals| {
        let mut acc = CompensatedSum::new();
        let eval_at = |d: f64, weight: f64| -> Result<f64> {
            let x = a + d;
            if x == a || !x.is_finite() {
                return Ok(0.0);
            }
            let at = Abscissa {
                x,
                from_lower: d,
                to_upper: f64::INFINITY,
            };
            Ok(weight * d * f(at)?)
        };
        // s >= 0 walks toward infinity, s < 0 toward the lower limit.
        scan_side(&table.nodes, false, scale, evals, &mut acc, |node| {
            eval_at(node.offset, node.weight)
        })?;
        scan_side(&table.nodes, true, scale, evals, &mut acc, |node| {
            eval_at(1.0 / node.offset, node.weight)
        })?;
        Ok(acc.value())
    })
}

pub fn try_integrate_semi_infinite<F>(f: F, a: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64>,
{
    try_integrate_semi_infinite_with(|at| f(at.x), a, cfg)
}

/// Exp-sinh integration of `f` over `(a, ∞)`.
pub fn integrate_semi_infinite<F>(f: F, a: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    try_integrate_semi_infinite(|x| Ok(f(x)), a, cfg)
}

/// Fixed `n`-point Gauss-Legendre rule on `[a, b]`, used as an independent
/// cross-check for smooth integrands.
pub fn gauss_legendre<F>(f: F, a: f64, b: f64, n: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = CompensatedSum::new();
    for i in 0..n.div_ceil(2) {
        let (x, w) = legendre_node(n, i);
        acc.add(w * f(mid - half * x));
        if 2 * i + 1 != n {
            acc.add(w * f(mid + half * x));
        }
    }
    half * acc.value()
}

/// i-th positive Gauss-Legendre node and weight by Newton iteration on P_n.
fn legendre_node(n: usize, i: usize) -> (f64, f64) {
    let nf = n as f64;
    let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
    let mut dp = 0.0;
    for _ in 0..100 {
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let pn = if n == 0 { 1.0 } else { p1 };
        let pn1 = if n == 0 { 0.0 } else { p0 };
        dp = nf * (x * pn - pn1) / (x * x - 1.0);
        let dx = pn / dp;
        x -= dx;
        if dx.abs() < 1e-16 {
            break;
        }
    }
    (x, 2.0 / ((1.0 - x * x) * dp * dp))
}
