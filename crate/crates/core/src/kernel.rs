//! The Bessel-Struve kernel `S_η(t)` for real `t` and real `η > -1`.
//!
//! ```text
//! S_η(t) = Γ(η+1)/√π · Σ_m t^m Γ((m+1)/2) / (m! Γ(m/2 + η + 1))
//! ```
//!
//! For `η > -1/2` the kernel also has the representation
//!
//! ```text
//! S_η(t) = 2Γ(η+1)/(√π Γ(η+1/2)) ∫_0^1 (1-u²)^(η-1/2) e^(tu) du
//! ```
//!
//! which is free of cancellation for `t <= 0`. [`kernel_eval`] picks the
//! cheapest path that keeps full double precision.

use crate::dd::{self, DoubleDouble};
use crate::error::{Error, Result};
use crate::quadrature::{try_integrate_finite_with, QuadConfig};
use crate::series::SeriesResult;
use crate::special::{gamma_ratio_half, ln_gamma};

/// Negative-argument switchover: the power series is used for `t >= -SWITCHOVER`.
pub const SWITCHOVER: f64 = 30.0;

/// Below `-ASYMPTOTIC_START` the integral representation is evaluated by its
/// large-argument expansion when that expansion reaches full precision.
pub const ASYMPTOTIC_START: f64 = 60.0;

/// Relative stopping tolerance for the power series inside [`kernel_eval`].
pub const SERIES_TOL: f64 = 1e-18;
pub const SERIES_MAX_TERMS: usize = 5000;

/// The series is rejected once `|sum| < EPS_dd * max|partial| * CANCELLATION_SAFETY`.
const CANCELLATION_SAFETY: f64 = 1e14;

/// Splits the negative-argument integral at `u = SPLIT_SCALE / |t|`.
const SPLIT_SCALE: f64 = 25.0;

/// Order `η` of the kernel. Construction caches the Gamma-function constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelOrder {
    eta: f64,
    /// `Γ(η+1) / (√π Γ(η+3/2))`, the m = 1 series coefficient.
    odd_seed: DoubleDouble,
    /// `2Γ(η+1) / (√π Γ(η+1/2))`; zero when no integral representation exists.
    integral_prefactor: f64,
}

impl KernelOrder {
    pub fn new(eta: f64) -> Result<Self> {
        if !eta.is_finite() || eta <= -1.0 {
            return Err(Error::domain(format!("kernel order must satisfy η > -1, got {eta}")));
        }
        let z = DoubleDouble::from_sum(eta, 1.0);
        let odd_seed = gamma_ratio_half(z) * dd::FRAC_1_SQRT_PI;
        let integral_prefactor = if eta > -0.5 {
            2.0 * (ln_gamma(eta + 1.0) - ln_gamma(eta + 0.5)).exp() / std::f64::consts::PI.sqrt()
        } else {
            0.0
        };
        Ok(Self {
            eta,
            odd_seed,
            integral_prefactor,
        })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// True iff `η > -1/2`.
    pub fn has_integral_rep(&self) -> bool {
        self.eta > -0.5
    }

    /// True for the two orders with elementary closed forms.
    pub fn is_elementary(&self) -> bool {
        self.eta == -0.5 || self.eta == 0.5
    }
}

/// Elementary closed forms: `S_{-1/2}(t) = e^t`, `S_{1/2}(t) = (e^t - 1)/t`.
pub fn kernel_closed_form(order: KernelOrder, t: f64) -> Option<f64> {
    if order.eta == -0.5 {
        Some(t.exp())
    } else if order.eta == 0.5 {
        if t == 0.0 {
            Some(1.0)
        } else if t == f64::NEG_INFINITY {
            Some(0.0)
        } else {
            Some(t.exp_m1() / t)
        }
    } else {
        None
    }
}

/// Power-series evaluation in double-double arithmetic.
///
/// Even and odd terms are generated by separate recurrences with ratio
/// `t² / ((m+2)(m+2+2η))`; the even track starts at 1 and the odd track at
/// `t Γ(η+1)/(√π Γ(η+3/2))`. Summation stops once the next two terms are
/// both below `tol · |sum|` and the tail is shrinking.
pub fn kernel_series(order: KernelOrder, t: f64, tol: f64, max_terms: usize) -> Result<SeriesResult> {
    if !(tol > 0.0) || max_terms < 1 {
        return Err(Error::domain("kernel series needs tol > 0 and max_terms >= 1"));
    }
    if !t.is_finite() {
        return Err(Error::domain(format!("kernel series needs finite t, got {t}")));
    }
    let t2 = DoubleDouble::from_prod(t, t);
    let two_eta = 2.0 * order.eta;
    // tracks[0] holds the current even term, tracks[1] the current odd term.
    let mut tracks = [DoubleDouble::ONE, order.odd_seed.mul_f64(t)];
    let mut sum = DoubleDouble::ZERO;
    let mut max_partial = 0.0f64;
    for m in 0..max_terms {
        let parity = m % 2;
        sum = sum + tracks[parity];
        max_partial = max_partial.max(sum.hi.abs());
        let mf = m as f64;
        let ratio = t2 / (DoubleDouble::from_sum(mf + 2.0, two_eta).mul_f64(mf + 2.0));
        tracks[parity] = tracks[parity] * ratio;
        if !sum.is_finite() {
            return Err(Error::NonFinite(format!("kernel series overflowed at t = {t}")));
        }
        let next = tracks[1 - parity].hi.abs();
        let after = tracks[parity].hi.abs();
        let threshold = tol * sum.hi.abs();
        if m >= 1 && ratio.hi < 1.0 && next < threshold && after < threshold {
            if sum.hi.abs() < dd::EPSILON * max_partial * CANCELLATION_SAFETY {
                return Err(Error::CancellationLoss(format!(
                    "S_{}({t}): |sum| = {:e} against partial sums of {max_partial:e}",
                    order.eta,
                    sum.hi.abs()
                )));
            }
            return Ok(SeriesResult {
                value: sum.to_f64(),
                terms_used: m + 1,
                tail_estimate: next,
            });
        }
    }
    Err(Error::non_convergence(format!(
        "kernel series at t = {t} not converged after {max_terms} terms"
    )))
}

/// Quadrature of the integral representation (requires `η > -1/2`).
pub fn kernel_integral_rep(order: KernelOrder, t: f64, quad: &QuadConfig) -> Result<f64> {
    if !order.has_integral_rep() {
        return Err(Error::domain(format!(
            "integral representation needs η > -1/2, got {}",
            order.eta
        )));
    }
    if t.is_nan() {
        return Err(Error::domain("kernel argument is NaN"));
    }
    if t == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    let power = order.eta - 0.5;
    let x = -t;
    let integral = if x <= SPLIT_SCALE {
        try_integrate_finite_with(
            |at| Ok((at.to_upper * (1.0 + at.x)).powf(power) * (t * at.from_lower).exp()),
            0.0,
            1.0,
            quad,
        )?
        .value
    } else {
        // Most of the mass sits in [0, SPLIT_SCALE/x].
        let split = SPLIT_SCALE / x;
        let head = try_integrate_finite_with(
            |at| {
                let u = at.from_lower;
                Ok(((1.0 - u) * (1.0 + u)).powf(power) * (t * u).exp())
            },
            0.0,
            split,
            quad,
        )?;
        // The tail is exponentially small, so only absolute accuracy matters.
        let tail_cfg = quad.with_abs_tol(quad.abs_tol.max(quad.rel_tol * head.value.abs()));
        let tail = try_integrate_finite_with(
            |at| Ok((at.to_upper * (1.0 + at.x)).powf(power) * (t * at.x).exp()),
            split,
            1.0,
            &tail_cfg,
        )?;
        head.value + tail.value
    };
    Ok(order.integral_prefactor * integral)
}

/// Large-`x` expansion of `S_η(-x)` from the integral representation:
/// `C Σ_k C(η-1/2, k) (-1)^k (2k)! / x^(2k+1)`. Returns `None` if the terms
/// start growing before reaching double precision.
fn kernel_asymptotic(order: KernelOrder, x: f64) -> Option<f64> {
    if x == f64::INFINITY {
        return Some(0.0);
    }
    let power = order.eta - 0.5;
    let inv_x2 = 1.0 / (x * x);
    let mut term = 1.0 / x;
    let mut sum = term;
    for k in 0..200 {
        let kf = k as f64;
        let next = -term * 2.0 * (power - kf) * (2.0 * kf + 1.0) * inv_x2;
        if next.abs() > term.abs() {
            return None;
        }
        sum += next;
        if next.abs() <= 1e-17 * sum.abs() {
            return Some(order.integral_prefactor * sum);
        }
        term = next;
    }
    None
}

/// Quadrature settings for kernel evaluations nested inside outer integrals.
pub fn kernel_quad_config() -> QuadConfig {
    QuadConfig {
        rel_tol: 1e-14,
        abs_tol: f64::MIN_POSITIVE,
        max_levels: 16,
        max_evals: 200_000,
    }
}

/// Evaluates `S_η(t)`, dispatching between closed forms, the power series,
/// the integral representation and its large-argument expansion.
pub fn kernel_eval(order: KernelOrder, t: f64) -> Result<f64> {
    if t.is_nan() {
        return Err(Error::domain("kernel argument is NaN"));
    }
    if let Some(v) = kernel_closed_form(order, t) {
        return Ok(v);
    }
    if t >= -SWITCHOVER {
        return kernel_series(order, t, SERIES_TOL, SERIES_MAX_TERMS).map(|r| r.value);
    }
    if !order.has_integral_rep() {
        return Err(Error::CancellationLoss(format!(
            "S_{}({t}) lies below the usable series range t >= -{SWITCHOVER}",
            order.eta
        )));
    }
    if t < -ASYMPTOTIC_START {
        if let Some(v) = kernel_asymptotic(order, -t) {
            return Ok(v);
        }
    }
    kernel_integral_rep(order, t, &kernel_quad_config())
}
