//! Seeded identity suites that exercise every relation the library claims
//! (recurrences, summation formulas, representations, transformations,
//! derivatives, generating function, distribution coherence).

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::distribution::ExtBetaDistribution;
use crate::error::Result;
use crate::extbeta::{
    ext_beta, ext_beta_rep, ext_beta_recurrence_rhs, ext_beta_sum_one_minus, ext_beta_sum_shift,
    incomplete_lower, incomplete_upper, ExtBetaParams, Representation,
};
use crate::hypergeometric::{
    confluent_derivative, confluent_integral, confluent_integral_alt, confluent_series,
    confluent_transform_rhs, confluent_transform_rhs_variant, gauss_derivative,
    gauss_generating_lhs, gauss_generating_rhs, gauss_integral, gauss_series, gauss_transform_rhs,
    gauss_transform_rhs_variant, ConfluentParams, GaussParams, KummerVariant, PfaffVariant,
    DEFAULT_MAX_TERMS,
};
use crate::kernel::{kernel_closed_form, kernel_series, KernelOrder, SERIES_MAX_TERMS, SERIES_TOL};
use crate::quadrature::{try_integrate_finite, QuadConfig};
use crate::special::beta;

/// Default number of random cases per suite.
pub const DEFAULT_CASES: usize = 10;

/// Terms allowed for the two beta summation formulas.
pub const SUMMATION_TERMS: usize = 100;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    pub cases: usize,
    /// Replaces every suite's own tolerance when set.
    pub tol_override: Option<f64>,
    pub cfg: QuadConfig,
    pub max_terms: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 42,
            cases: DEFAULT_CASES,
            tol_override: None,
            cfg: QuadConfig::default(),
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub worst: f64,
    pub tolerance: f64,
    pub failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.worst <= self.tolerance
    }
}

/// Residual of one slot assignment of a transformation identity.
#[derive(Debug, Clone, PartialEq)]
pub struct VariantReport {
    pub identity: &'static str,
    pub label: &'static str,
    /// Worst relative residual over the cases that could be evaluated.
    pub worst: Option<f64>,
    pub evaluated: usize,
    pub skipped: usize,
}

impl VariantReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.skipped == 0 && self.worst.is_some_and(|w| w <= tol)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
    pub variants: Vec<VariantReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    /// Fixed-width text table; contains no timings, so it is reproducible.
    pub fn render(&self, seed: u64, cases: usize) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verify seed={seed} cases={cases}");
        let _ = writeln!(out, "{:<28} {:>5} {:>12} {:>10}  status", "suite", "cases", "worst", "tol");
        for s in &self.suites {
            let status = if s.passed() { "pass" } else { "FAIL" };
            let _ = write!(
                out,
                "{:<28} {:>5} {:>12.3e} {:>10.1e}  {status}",
                s.name, s.cases, s.worst, s.tolerance
            );
            if let Some(f) = &s.failure {
                let _ = write!(out, "  ({f})");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "slot diagnostics (informational)");
        for v in &self.variants {
            let worst = v.worst.map_or("-".to_string(), |w| format!("{w:.3e}"));
            let _ = writeln!(
                out,
                "  {:<10} {:<32} worst={worst:<10} evaluated={} skipped={}",
                v.identity, v.label, v.evaluated, v.skipped
            );
        }
        let passed = self.suites.iter().filter(|s| s.passed()).count();
        let _ = writeln!(out, "{passed}/{} suites passed", self.suites.len());
        out
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = b.abs().max(f64::MIN_POSITIVE);
    (a - b).abs() / scale
}

fn draw(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

fn order(eta: f64) -> KernelOrder {
    KernelOrder::new(eta).expect("drawn orders exceed -1")
}

struct Suite {
    name: &'static str,
    tolerance: f64,
    // Returns the worst residual over `cases` random draws.
    run: fn(&mut ChaCha8Rng, usize, &VerifyOptions) -> Result<f64>,
}

fn max_over<F>(rng: &mut ChaCha8Rng, cases: usize, mut case: F) -> Result<f64>
where
    F: FnMut(&mut ChaCha8Rng) -> Result<f64>,
{
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let r = case(rng)?;
        worst = if r.is_nan() { f64::INFINITY } else { worst.max(r) };
    }
    Ok(worst)
}

fn suite_kernel(rng: &mut ChaCha8Rng, cases: usize, _: &VerifyOptions) -> Result<f64> {
    max_over(rng, cases, |rng| {
        let t = draw(rng, -20.0, 5.0);
        let eta = if rng.gen_bool(0.5) { -0.5 } else { 0.5 };
        let order = order(eta);
        let exact = kernel_closed_form(order, t).expect("elementary order");
        let series = kernel_series(order, t, SERIES_TOL, SERIES_MAX_TERMS)?.value;
        Ok(rel(series, exact))
    })
}

fn suite_classical(rng: &mut ChaCha8Rng, cases: usize, o: &VerifyOptions) -> Result<f64> {
    max_over(rng, cases, |rng| {
        let (a, b) = (draw(rng, 0.5, 4.0), draw(rng, 0.5, 4.0));
        let eta = [-0.5, 0.0, 0.5, 2.0][rng.gen_range(0..4)];
        let params = ExtBetaParams::with_eta(a, b, 0.0, 0.0, eta)?;
        Ok(rel(ext_beta(&params, &o.cfg)?, beta(a, b)))
    })
}

fn exponential_weight_beta(a: f64, b: f64, p: f64, q: f64, cfg: &QuadConfig) -> Result<f64> {
    try_integrate_finite(
        |y| {
            let ybar = 1.0 - y;
            Ok(y.powf(a - 1.0) * ybar.powf(b - 1.0) * (-p / y - q / ybar).exp())
        },
        0.0,
        1.0,
        cfg,
    )
    .map(|r| r.value)
}

fn suite_lineage(rng: &mut ChaCha8Rng, cases: usize, o: &VerifyOptions) -> Result<f64> {
    max_over(rng, cases, |rng| {
        let (a, b) = (draw(rng, 0.5, 4.0), draw(rng, 0.5, 4.0));
        let p = draw(rng, 0.0, 2.0);
        let q = if rng.gen_bool(0.5) { p } else { draw(rng, 0.0, 2.0) };
        let params = ExtBetaParams::with_eta(a, b, p, q, -0.5)?;
        Ok(rel(ext_beta(&params, &o.cfg)?, exponential_weight_beta(a, b, p, q, &o.cfg)?))
    })
}

fn random_params(rng: &mut ChaCha8Rng) -> Result<ExtBetaParams> {
    ExtBetaParams::with_eta(
        draw(rng, 0.5, 4.0),
        draw(rng, 0.5, 4.0),
        draw(rng, 0.0, 2.0),
        draw(rng, 0.0, 2.0),
        draw(rng, -0.4, 3.0),
    )
}

fn suite_representations(rng: &mut ChaCha8Rng, cases: usize, o: &VerifyOptions) -> Result<f64> {
    max_over(rng, cases, |rng| {
        let params = random_params(rng)?;
        let mut values = vec![ext_beta(&params, &o.cfg)?];
        for rep in [
            Representation::Trig,
            Representation::SemiInfinite,
            Representation::Symmetric,
            Representation::Affine { a: -3.0, c: 7.0 },
        ] {
            values.push(ext_beta_rep(&params, rep, &o.cfg)?);
        }
        let mut worst: f64 = 0.0;
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                worst = worst.max(rel(values[i], values[j]));
            }
        }
        Ok(worst)
    })
}

fn suite_recurrence(rng: &mut ChaCha8Rng, cases: usize, o: &VerifyOptions) -> Result<f64> {
    max_over(rng, cases, |rng| {
        let params = random_params(rng)?;
        Ok(rel(ext_beta_recurrence_rhs(&params, &o.cfg)?, ext_beta(&params, &o.cfg)?))
    })
}

// Both summation formulas converge only algebraically unless the weight at
// y = 1 is exponential, so the suites draw η = -1/2 with q bounded away from 0.
fn summation_params(rng: &mut ChaCha8Rng, xi2_lo: f64, xi2_hi: f64) -> ExtBetaParams {
    ExtBetaParams {
        xi1: draw(rng, 0.5, 3.0),
        xi2: draw(rng, xi2_lo, xi2_hi),
        p: draw(rng, 0.0, 1.0),
        q: draw(rng, 1.5, 3.0),
        order: order(-0.5),
    }
}

fn suite_sum_one_minus(rng: &mut ChaCha8Rng, cases: usize, o: &VerifyOptions) -> Result<f64> {
    max_over(rng, cases, |rng| {
        let params = summation_params(rng, 0.05, 0.95);
        let target = ext_beta(&params.with_xi(params.xi1, 1.0 - params.xi2)?, &o.cfg)?;
        Ok(rel(ext_beta_sum_one_minus(&params, SUMMATION_TERMS, &o.cfg)?.value, target))
    })
}

fn suite_sum_shift(rng: &mut ChaCha8Rng, cases: usize, o: &VerifyOptions) -> Result<f64> {
    max_over(rng, cases, |rng| {
        let params = summation_params(rng, 0.5, 3.0);
        params.validate()?;
        let target = ext_beta(&params, &o.cfg)?;
        Ok(rel(ext_beta_sum_shift(&params, SUMMATION_TERMS, &o.cfg)?.value, target))
    })
}

fn random_gauss(rng: &mut ChaCha8Rng) -> Result<GaussParams> {
    let xi2 = draw(rng, 0.5, 2.5);
    GaussParams::with_eta(
        draw(rng, -1.0, 2.0),
        xi2,
        xi2 + draw(rng, 0.5, 2.5),
        draw(rng, 0.0, 1.0),
        draw(rng, 0.0, 1.0),
        draw(rng, -0.4, 2.0),
    )
}

fn random_confluent(rng: &mut ChaCha8Rng) -> Result<ConfluentParams> {
    let xi2 = draw(rng, 0.5, 2.5);
    ConfluentParams::with_eta(
        xi2,
        xi2 + draw(rng, 0.5, 2.5),
        draw(rng, 0.0, 1.0),
        draw(rng, 0.0, 1.0),
        draw(rng, -0.4, 2.0),
    )
}

fn suite_gauss_forms(rng: &mut ChaCha8Rng, cases: usize, o: &VerifyOptions) -> Result<f64> {
    max_over(rng, cases, |rng| {
        let gp = random_gauss(rng)?;
        let x = draw(rng, -0.9, 0.9);
        Ok(rel(gauss_series(&gp, x, o.max_terms, &o.cfg)?.value, gauss_integral(&gp, x, &o.cfg)?))
    })
}

fn suite_confluent_forms(rng: &mut ChaCha8Rng, cases: usize, o: &VerifyOptions) -> Result<f64> {
    max_over(rng, cases, |rng| {
        let cp = random_confluent(rng)?;
        let x = draw(rng, -5.0, 5.0);
        let series = confluent_series(&cp, x, o.max_terms, &o.cfg)?.value;
        let integral = confluent_integral(&cp, x, &o.cfg)?;
        let reflected = confluent_integral_alt(&cp, x, &o.cfg)?;
        Ok(rel(series, integral).max(rel(reflected, integral)))
    })
}

/// Fourth-order central difference built from steps `h` and `h/2`.
pub fn richardson_derivative<F>(f: F, x: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let central = |h: f64| -> Result<f64> { Ok((f(x + h)? - f(x - h)?) / (2.0 * h)) };
    let coarse = central(h)?;
    let fine = central(h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Step used by the finite-difference oracles.
pub const DIFFERENCE_STEP: f64 = 1e-3;

fn suite_derivatives(rng: &mut ChaCha8Rng, cases: usize, o: &VerifyOptions) -> Result<f64> {
    max_over(rng, cases, |rng| {
        let gp = random_gauss(rng)?;
        let x = draw(rng, -0.6, 0.6);
        let fd = richardson_derivative(|t| Ok(gauss_series(&gp, t, o.max_terms, &o.cfg)?.value), x, DIFFERENCE_STEP)?;
        let gauss = rel(gauss_derivative(&gp, x, 1, o.max_terms, &o.cfg)?, fd);
        let cp = random_confluent(rng)?;
        let x = draw(rng, -3.0, 3.0);
        let fd = richardson_derivative(|t| Ok(confluent_series(&cp, t, o.max_terms, &o.cfg)?.value), x, DIFFERENCE_STEP)?;
        let confluent = rel(confluent_derivative(&cp, x, 1, o.max_terms, &o.cfg)?, fd);
        Ok(gauss.max(confluent))
    })
}

fn suite_transforms(rng: &mut ChaCha8Rng, cases: usize, o: &VerifyOptions) -> Result<f64> {
    max_over(rng, cases, |rng| {
        let gp = random_gauss(rng)?;
        let x = draw(rng, -0.5, 0.4);
        let pfaff = rel(gauss_transform_rhs(&gp, x, o.max_terms, &o.cfg)?, gauss_series(&gp, x, o.max_terms, &o.cfg)?.value);
        let cp = random_confluent(rng)?;
        let x = draw(rng, -5.0, 5.0);
        let kummer = rel(
            confluent_transform_rhs(&cp, x, o.max_terms, &o.cfg)?,
            confluent_series(&cp, x, o.max_terms, &o.cfg)?.value,
        );
        Ok(pfaff.max(kummer))
    })
}

fn suite_generating(rng: &mut ChaCha8Rng, cases: usize, o: &VerifyOptions) -> Result<f64> {
    max_over(rng, cases, |rng| {
        let gp = random_gauss(rng)?;
        let z = draw(rng, -0.5, 0.5);
        let x = draw(rng, -0.4, 0.4);
        let lhs = gauss_generating_lhs(&gp, x, z, o.max_terms, &o.cfg)?.value;
        Ok(rel(lhs, gauss_generating_rhs(&gp, x, z, o.max_terms, &o.cfg)?))
    })
}

fn suite_distribution(rng: &mut ChaCha8Rng, cases: usize, o: &VerifyOptions) -> Result<f64> {
    max_over(rng, cases, |rng| {
        let params = random_params(rng)?;
        let d = ExtBetaDistribution::new(params, o.cfg)?;
        let mass = try_integrate_finite(|y| d.pdf(y), 0.0, 1.0, &o.cfg)?.value;
        let x = draw(rng, 0.0, 1.0);
        let split = (incomplete_lower(&params, x, &o.cfg)? + incomplete_upper(&params, x, &o.cfg)?)
            / d.normalizer();
        let total = d.cdf(x)? + d.reliability(x)?;
        Ok(rel(mass, 1.0).max(rel(split, 1.0)).max(rel(total, 1.0)))
    })
}

fn suites() -> Vec<Suite> {
    vec![
        Suite { name: "kernel closed forms", tolerance: 1e-12, run: suite_kernel },
        Suite { name: "classical reduction", tolerance: 1e-10, run: suite_classical },
        Suite { name: "exponential-weight lineage", tolerance: 1e-9, run: suite_lineage },
        Suite { name: "representations", tolerance: 1e-8, run: suite_representations },
        Suite { name: "recurrence", tolerance: 1e-8, run: suite_recurrence },
        Suite { name: "summation 1-xi2", tolerance: 1e-6, run: suite_sum_one_minus },
        Suite { name: "summation shift", tolerance: 1e-6, run: suite_sum_shift },
        Suite { name: "gauss series/integral", tolerance: 1e-7, run: suite_gauss_forms },
        Suite { name: "confluent series/integrals", tolerance: 1e-7, run: suite_confluent_forms },
        Suite { name: "derivatives", tolerance: 1e-6, run: suite_derivatives },
        Suite { name: "transformations", tolerance: 1e-7, run: suite_transforms },
        Suite { name: "generating function", tolerance: 1e-6, run: suite_generating },
        Suite { name: "distribution coherence", tolerance: 1e-10, run: suite_distribution },
    ]
}

fn suite_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (index as u64 + 1).wrapping_mul(0xD1B5_4A32_D192_ED03)
}

fn variant_reports(o: &VerifyOptions) -> Vec<VariantReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(suite_seed(o.seed, usize::MAX >> 1));
    // (gauss params, x) and (confluent params, x) drawn once, shared by all variants
    let gauss_cases: Vec<(GaussParams, f64)> = (0..o.cases)
        .filter_map(|_| Some((random_gauss(&mut rng).ok()?, draw(&mut rng, -0.5, 0.4))))
        .collect();
    let confluent_cases: Vec<(ConfluentParams, f64)> = (0..o.cases)
        .filter_map(|_| Some((random_confluent(&mut rng).ok()?, draw(&mut rng, -5.0, 5.0))))
        .collect();
    let mut out = Vec::new();
    for variant in PfaffVariant::ALL {
        let residuals: Vec<Option<f64>> = gauss_cases
            .iter()
            .map(|(gp, x)| {
                let rhs = gauss_transform_rhs_variant(gp, *x, variant, o.max_terms, &o.cfg).ok()?;
                let lhs = gauss_series(gp, *x, o.max_terms, &o.cfg).ok()?.value;
                Some(rel(rhs, lhs))
            })
            .collect();
        out.push(summarize("pfaff", variant.label(), &residuals));
    }
    for variant in KummerVariant::ALL {
        let residuals: Vec<Option<f64>> = confluent_cases
            .iter()
            .map(|(cp, x)| {
                let rhs = confluent_transform_rhs_variant(cp, *x, variant, o.max_terms, &o.cfg).ok()?;
                let lhs = confluent_series(cp, *x, o.max_terms, &o.cfg).ok()?.value;
                Some(rel(rhs, lhs))
            })
            .collect();
        out.push(summarize("kummer", variant.label(), &residuals));
    }
    out
}

fn summarize(identity: &'static str, label: &'static str, residuals: &[Option<f64>]) -> VariantReport {
    let values: Vec<f64> = residuals.iter().flatten().copied().collect();
    VariantReport {
        identity,
        label,
        worst: values.iter().copied().reduce(f64::max),
        evaluated: values.len(),
        skipped: residuals.len() - values.len(),
    }
}

/// Runs every suite; suites run in parallel but each draws from its own
/// seeded stream, so the report is independent of scheduling.
pub fn run(o: &VerifyOptions) -> VerifyReport {
    let suites = suites();
    let reports = suites
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let mut rng = ChaCha8Rng::seed_from_u64(suite_seed(o.seed, i));
            let tolerance = o.tol_override.unwrap_or(s.tolerance);
            match (s.run)(&mut rng, o.cases, o) {
                Ok(worst) => SuiteReport { name: s.name, cases: o.cases, worst, tolerance, failure: None },
                Err(e) => SuiteReport {
                    name: s.name,
                    cases: o.cases,
                    worst: f64::INFINITY,
                    tolerance,
                    failure: Some(e.to_string()),
                },
            }
        })
        .collect();
    VerifyReport {
        suites: reports,
        variants: variant_reports(o),
    }
}
