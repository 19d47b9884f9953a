//! Probability distribution on `(0, 1)` whose density is the extended beta
//! integrand normalized by `B_η^{p,q}(ξ1, ξ2)`.

use std::sync::OnceLock;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extbeta::{ext_beta_cached, ext_beta_interval, ExtBetaParams};
use crate::quadrature::QuadConfig;
use crate::series::{CompensatedSum, SeriesResult};
use crate::special::ln_gamma;

/// Intervals in the tabulated distribution function used for sampling.
pub const CDF_GRID_INTERVALS: usize = 1024;

/// Default number of moment terms in [`ExtBetaDistribution::mgf`].
pub const DEFAULT_MGF_TERMS: usize = 40;

/// Negative variance radicands smaller than this are treated as rounding.
const VARIANCE_ROUNDING: f64 = 1e-12;

#[derive(Debug)]
struct CdfTable {
    nodes: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

/// The extended beta distribution with parameters `(ξ1, ξ2, p, q, η)`.
#[derive(Debug)]
pub struct ExtBetaDistribution {
    params: ExtBetaParams,
    cfg: QuadConfig,
    norm: f64,
    table: OnceLock<CdfTable>,
}

impl ExtBetaDistribution {
    pub fn new(params: ExtBetaParams, cfg: QuadConfig) -> Result<Self> {
        params.validate()?;
        cfg.validate()?;
        let norm = ext_beta_cached(&params, &cfg)?;
        if !(norm > 0.0) {
            return Err(Error::domain(format!(
                "normalizing constant is {norm}; the weight is not a density"
            )));
        }
        Ok(Self {
            params,
            cfg,
            norm,
            table: OnceLock::new(),
        })
    }

    pub fn params(&self) -> &ExtBetaParams {
        &self.params
    }

    /// `B_η^{p,q}(ξ1, ξ2)`.
    pub fn normalizer(&self) -> f64 {
        self.norm
    }

    /// Density at `y`, zero outside `(0, 1)`.
    pub fn pdf(&self, y: f64) -> Result<f64> {
        if y.is_nan() {
            return Err(Error::domain("pdf argument is NaN"));
        }
        if y <= 0.0 || y >= 1.0 {
            return Ok(0.0);
        }
        Ok(self.params.integrand(y, 1.0 - y)? / self.norm)
    }

    /// `E[Y^n] = B(ξ1 + n, ξ2) / B(ξ1, ξ2)`; `n` may be any real for which
    /// the shifted function exists.
    pub fn moment(&self, n: f64) -> Result<f64> {
        if n == 0.0 {
            return Ok(1.0);
        }
        let shifted = self.params.with_xi(self.params.xi1 + n, self.params.xi2)?;
        Ok(ext_beta_cached(&shifted, &self.cfg)? / self.norm)
    }

    pub fn mean(&self) -> Result<f64> {
        self.moment(1.0)
    }

    /// `(B2 B0 - B1²) / B0²`.
    pub fn variance(&self) -> Result<f64> {
        let m1 = self.moment(1.0)?;
        let m2 = self.moment(2.0)?;
        Ok(m2 - m1 * m1)
    }

    /// `sqrt(B2 B0 / B1² - 1)`.
    pub fn coeff_variation(&self) -> Result<f64> {
        let m1 = self.moment(1.0)?;
        let m2 = self.moment(2.0)?;
        let radicand = m2 / (m1 * m1) - 1.0;
        if radicand < -VARIANCE_ROUNDING {
            return Err(Error::domain(format!("variance radicand {radicand} is negative")));
        }
        Ok(radicand.max(0.0).sqrt())
    }

    /// `Σ_{n<terms} t^n/n! · E[Y^n]`.
    ///
    /// All `terms` terms are summed. Since `0 < E[Y^n] <= 1`, the tail is
    /// bounded by `|t|^N/N! · e^|t|`, which is reported as the tail estimate.
    pub fn mgf(&self, t: f64, terms: usize) -> Result<SeriesResult> {
        let (re, _, tail) = self.moment_series(t, terms, false)?;
        Ok(SeriesResult {
            value: re,
            terms_used: terms,
            tail_estimate: tail,
        })
    }

    /// `E[e^{itY}] = Σ_{n<terms} (it)^n/n! · E[Y^n]`.
    pub fn char_fn(&self, t: f64, terms: usize) -> Result<Complex64> {
        let (re, im, _) = self.moment_series(t, terms, true)?;
        Ok(Complex64::new(re, im))
    }

    fn moment_series(&self, t: f64, terms: usize, imaginary: bool) -> Result<(f64, f64, f64)> {
        if !t.is_finite() {
            return Err(Error::domain("transform argument must be finite"));
        }
        if terms == 0 {
            return Err(Error::domain("need at least one term"));
        }
        let mut re = CompensatedSum::new();
        let mut im = CompensatedSum::new();
        re.add(1.0);
        let mut coefficient = 1.0;
        for n in 1..terms {
            coefficient *= t / n as f64;
            if coefficient == 0.0 {
                break;
            }
            let term = coefficient * self.moment(n as f64)?;
            // i^n cycles through 1, i, -1, -i
            match (imaginary, n % 4) {
                (false, _) => re.add(term),
                (true, 0) => re.add(term),
                (true, 1) => im.add(term),
                (true, 2) => re.add(-term),
                (true, _) => im.add(-term),
            }
        }
        let a = t.abs();
        let tail = if a == 0.0 {
            0.0
        } else {
            (terms as f64 * a.ln() - ln_gamma(terms as f64 + 1.0) + a).exp()
        };
        Ok((re.value(), im.value(), tail))
    }

    /// `I(x) / B` where `I` is the lower incomplete function.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(Error::domain("cdf argument is NaN"));
        }
        if x <= 0.0 {
            return Ok(0.0);
        }
        if x >= 1.0 {
            return Ok(1.0);
        }
        // Integrate over the shorter side for accuracy in both tails.
        if x <= 0.5 {
            Ok((ext_beta_interval(&self.params, 0.0, x, &self.cfg)? / self.norm).clamp(0.0, 1.0))
        } else {
            let upper = ext_beta_interval(&self.params, x, 1.0, &self.cfg)? / self.norm;
            Ok((1.0 - upper).clamp(0.0, 1.0))
        }
    }

    /// `1 - cdf(x)`, computed directly from the upper piece when `x > 1/2`.
    pub fn reliability(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(Error::domain("reliability argument is NaN"));
        }
        if x <= 0.0 {
            return Ok(1.0);
        }
        if x >= 1.0 {
            return Ok(0.0);
        }
        if x > 0.5 {
            Ok((ext_beta_interval(&self.params, x, 1.0, &self.cfg)? / self.norm).clamp(0.0, 1.0))
        } else {
            Ok(1.0 - self.cdf(x)?)
        }
    }

    fn table(&self) -> Result<&CdfTable> {
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let built = build_table(&self.params, &self.cfg)?;
        Ok(self.table.get_or_init(|| built))
    }

    /// Inverse of the tabulated distribution function at `u ∈ [0, 1]`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::domain(format!("quantile level {u} outside [0, 1]")));
        }
        Ok(self.table()?.invert(u))
    }

    /// `count` draws by inversion of the tabulated distribution function,
    /// reproducible for a given `seed`.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<f64>> {
        let table = self.table()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok((0..count)
            .map(|_| {
                let u = loop {
                    let u: f64 = rng.gen();
                    if u > 0.0 {
                        break u;
                    }
                };
                table
                    .invert(u)
                    .clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0)
            })
            .collect())
    }
}

fn build_table(params: &ExtBetaParams, cfg: &QuadConfig) -> Result<CdfTable> {
    let n = CDF_GRID_INTERVALS;
    let nodes: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    let pieces = (0..n)
        .into_par_iter()
        .map(|i| ext_beta_interval(params, nodes[i], nodes[i + 1], cfg))
        .collect::<Result<Vec<f64>>>()?;
    let mut acc = CompensatedSum::new();
    let mut values = Vec::with_capacity(n + 1);
    values.push(0.0);
    for piece in &pieces {
        acc.add(piece.max(0.0));
        values.push(acc.value());
    }
    let total = acc.value();
    if !(total > 0.0) {
        return Err(Error::domain("distribution table has no mass"));
    }
    for v in values.iter_mut() {
        *v /= total;
    }
    values[n] = 1.0;
    let slopes = monotone_slopes(&nodes, &values);
    Ok(CdfTable {
        nodes,
        values,
        slopes,
    })
}

/// Fritsch-Carlson derivatives for a monotone piecewise cubic interpolant.
fn monotone_slopes(x: &[f64], f: &[f64]) -> Vec<f64> {
    let n = x.len();
    let secant: Vec<f64> = (0..n - 1)
        .map(|i| (f[i + 1] - f[i]) / (x[i + 1] - x[i]))
        .collect();
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        let (a, b) = (secant[i - 1], secant[i]);
        if a > 0.0 && b > 0.0 {
            let (h0, h1) = (x[i] - x[i - 1], x[i + 1] - x[i]);
            let w1 = 2.0 * h1 + h0;
            let w2 = h1 + 2.0 * h0;
            d[i] = (w1 + w2) / (w1 / a + w2 / b);
        }
    }
    let end = |s0: f64, s1: f64, h0: f64, h1: f64| {
        let d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
        if d.signum() != s0.signum() || s0 == 0.0 {
            0.0
        } else if s0.signum() != s1.signum() && d.abs() > 3.0 * s0.abs() {
            3.0 * s0
        } else {
            d
        }
    };
    if n > 2 {
        d[0] = end(secant[0], secant[1], x[1] - x[0], x[2] - x[1]);
        d[n - 1] = end(
            secant[n - 2],
            secant[n - 3],
            x[n - 1] - x[n - 2],
            x[n - 2] - x[n - 3],
        );
    } else {
        d[0] = secant[0];
        d[1] = secant[0];
    }
    d
}

impl CdfTable {
    fn interpolate(&self, i: usize, x: f64) -> f64 {
        let h = self.nodes[i + 1] - self.nodes[i];
        let s = (x - self.nodes[i]) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * self.values[i] + h10 * h * self.slopes[i] + h01 * self.values[i + 1] + h11 * h * self.slopes[i + 1]
    }

    fn invert(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return 1.0;
        }
        // first interval whose right end reaches u
        let i = self.values.partition_point(|&v| v < u).clamp(1, self.nodes.len() - 1) - 1;
        let (mut lo, mut hi) = (self.nodes[i], self.nodes[i + 1]);
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.interpolate(i, mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classical(a: f64, b: f64) -> ExtBetaDistribution {
        let params = ExtBetaParams::with_eta(a, b, 0.0, 0.0, 0.5).unwrap();
        ExtBetaDistribution::new(params, QuadConfig::default()).unwrap()
    }

    #[test]
    fn classical_beta_moments() {
        let d = classical(2.0, 3.0);
        assert!((d.mean().unwrap() - 0.4).abs() < 1e-13);
        assert!((d.variance().unwrap() - 0.04).abs() < 1e-13);
        assert!((d.coeff_variation().unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn pdf_support_and_shape() {
        let d = classical(2.0, 3.0);
        assert_eq!(d.pdf(0.0).unwrap(), 0.0);
        assert_eq!(d.pdf(1.5).unwrap(), 0.0);
        // 12 y (1-y)^2
        assert!((d.pdf(0.25).unwrap() - 12.0 * 0.25 * 0.5625).abs() < 1e-12);
    }

    #[test]
    fn cdf_of_uniform() {
        let d = classical(1.0, 1.0);
        for &x in &[0.1, 0.5, 0.9] {
            assert!((d.cdf(x).unwrap() - x).abs() < 1e-13);
            assert!((d.reliability(x).unwrap() - (1.0 - x)).abs() < 1e-13);
        }
    }

    #[test]
    fn mgf_with_zero_argument_is_one() {
        let d = classical(2.0, 3.0);
        let r = d.mgf(0.0, DEFAULT_MGF_TERMS).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.tail_estimate, 0.0);
    }

    #[test]
    fn char_fn_of_uniform() {
        // (e^{it} - 1)/(it)
        let d = classical(1.0, 1.0);
        let t = 1.3f64;
        let z = d.char_fn(t, DEFAULT_MGF_TERMS).unwrap();
        assert!((z.re - t.sin() / t).abs() < 1e-13);
        assert!((z.im - (1.0 - t.cos()) / t).abs() < 1e-13);
    }

    #[test]
    fn monotone_slopes_keep_flat_regions_flat() {
        let x = [0.0, 1.0, 2.0, 3.0, 4.0];
        let f = [0.0, 0.0, 0.5, 1.0, 1.0];
        let d = monotone_slopes(&x, &f);
        assert_eq!(d[0], 0.0);
        assert_eq!(d[1], 0.0);
        assert_eq!(d[3], 0.0);
        assert_eq!(d[4], 0.0);
    }

    #[test]
    fn quantile_inverts_uniform() {
        let d = classical(1.0, 1.0);
        for &u in &[0.0, 0.013, 0.5, 0.77, 1.0] {
            assert!((d.quantile(u).unwrap() - u).abs() < 1e-12);
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let d = classical(2.0, 5.0);
        let a = d.sample(50, 7).unwrap();
        let b = d.sample(50, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|&x| x > 0.0 && x < 1.0));
        assert_ne!(a, d.sample(50, 8).unwrap());
    }
}
