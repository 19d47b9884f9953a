//! The extended beta function
//!
//! ```text
//! B_η^{p,q}(ξ1, ξ2) = ∫_0^1 y^(ξ1-1) (1-y)^(ξ2-1) S_η(-p/y) S_η(-q/(1-y)) dy
//! ```
//!
//! together with its change-of-variable representations, the recurrence in
//! `(ξ1, ξ2)`, two summation formulas, and the incomplete integrals.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::kernel::{kernel_eval, KernelOrder};
use crate::quadrature::{
    try_integrate_finite_with, try_integrate_semi_infinite_with, Abscissa, QuadConfig,
};
use crate::series::{sum_series, SeriesResult};

/// Parameters `(ξ1, ξ2, p, q, η)` of `B_η^{p,q}(ξ1, ξ2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtBetaParams {
    pub xi1: f64,
    pub xi2: f64,
    pub p: f64,
    pub q: f64,
    pub order: KernelOrder,
}

/// Minimum exponent that keeps `y^(ξ-1) S_η(-c/y)` integrable at `y = 0`.
fn exponent_floor(weight: f64, order: &KernelOrder) -> Option<f64> {
    if weight == 0.0 {
        Some(0.0)
    } else if order.eta() == -0.5 {
        // exp(-c/y) decays faster than any power
        None
    } else if order.has_integral_rep() {
        // S_η(-c/y) ~ const * y/c
        Some(-1.0)
    } else {
        Some(0.0)
    }
}

impl ExtBetaParams {
    pub fn new(xi1: f64, xi2: f64, p: f64, q: f64, order: KernelOrder) -> Result<Self> {
        let params = Self {
            xi1,
            xi2,
            p,
            q,
            order,
        };
        params.validate()?;
        Ok(params)
    }

    /// Convenience constructor that also builds the kernel order.
    pub fn with_eta(xi1: f64, xi2: f64, p: f64, q: f64, eta: f64) -> Result<Self> {
        Self::new(xi1, xi2, p, q, KernelOrder::new(eta)?)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.xi1.is_finite() || !self.xi2.is_finite() {
            return Err(Error::domain("ξ1 and ξ2 must be finite"));
        }
        if !(self.p >= 0.0 && self.p.is_finite()) || !(self.q >= 0.0 && self.q.is_finite()) {
            return Err(Error::domain(format!(
                "p and q must be finite and non-negative, got p = {}, q = {}",
                self.p, self.q
            )));
        }
        for (name, xi, weight) in [("ξ1", self.xi1, self.p), ("ξ2", self.xi2, self.q)] {
            if let Some(floor) = exponent_floor(weight, &self.order) {
                if xi <= floor {
                    return Err(Error::domain(format!(
                        "{name} = {xi} makes the integral diverge (need {name} > {floor} for p, q = {weight}, η = {})",
                        self.order.eta()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Same kernel data with new exponents, validated.
    pub fn with_xi(&self, xi1: f64, xi2: f64) -> Result<Self> {
        Self::new(xi1, xi2, self.p, self.q, self.order)
    }

    /// `(ξ2, ξ1, q, p)`: the parameters seen after `y -> 1 - y`.
    pub fn reflected(&self) -> Self {
        Self {
            xi1: self.xi2,
            xi2: self.xi1,
            p: self.q,
            q: self.p,
            order: self.order,
        }
    }

    /// True when no kernel factor is present (classical beta integrand).
    pub fn is_classical(&self) -> bool {
        self.p == 0.0 && self.q == 0.0
    }

    /// Integrand at a point given both `y` and `1 - y`.
    pub fn integrand(&self, y: f64, ybar: f64) -> Result<f64> {
        Ok(kernel_factor(self.order, y, self.xi1 - 1.0, self.p)?
            * kernel_factor(self.order, ybar, self.xi2 - 1.0, self.q)?)
    }
}

/// `base^exponent · S_η(-weight/base)`, guarded against intermediate overflow.
pub(crate) fn kernel_factor(order: KernelOrder, base: f64, exponent: f64, weight: f64) -> Result<f64> {
    let power = base.powf(exponent);
    if weight == 0.0 {
        return Ok(power);
    }
    let s = kernel_eval(order, -weight / base)?;
    if s == 0.0 {
        return Ok(0.0);
    }
    let v = power * s;
    if v.is_finite() {
        Ok(v)
    } else {
        Ok(s.signum() * (exponent * base.ln() + s.abs().ln()).exp())
    }
}

/// Recovers `(y, 1 - y)` to full precision from a node on `(a, b) ⊂ (0, 1)`.
fn unit_point(at: Abscissa, a: f64, b: f64) -> (f64, f64) {
    if at.from_lower <= at.to_upper {
        (a + at.from_lower, (1.0 - a) - at.from_lower)
    } else {
        (b - at.to_upper, (1.0 - b) + at.to_upper)
    }
}

/// `∫_a^b integrand(y) · weight(y, 1-y) dy` for `0 <= a < b <= 1`.
pub(crate) fn integrate_weighted<W>(
    params: &ExtBetaParams,
    a: f64,
    b: f64,
    weight: W,
    cfg: &QuadConfig,
) -> Result<f64>
where
    W: Fn(f64, f64) -> f64,
{
    params.validate()?;
    try_integrate_finite_with(
        |at| {
            let (y, ybar) = unit_point(at, a, b);
            let w = weight(y, ybar);
            if w == 0.0 {
                return Ok(0.0);
            }
            Ok(w * params.integrand(y, ybar)?)
        },
        a,
        b,
        cfg,
    )
    .map(|r| r.value)
}

/// `∫_a^b` of the defining integrand, `0 <= a < b <= 1`.
pub fn ext_beta_interval(params: &ExtBetaParams, a: f64, b: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(0.0 <= a && a < b && b <= 1.0) {
        return Err(Error::domain(format!("need 0 <= a < b <= 1, got ({a}, {b})")));
    }
    integrate_weighted(params, a, b, |_, _| 1.0, cfg)
}

/// `B_η^{p,q}(ξ1, ξ2)` by quadrature of the defining integral.
pub fn ext_beta(params: &ExtBetaParams, cfg: &QuadConfig) -> Result<f64> {
    ext_beta_interval(params, 0.0, 1.0, cfg)
}

type MemoKey = [u64; 9];

fn memo_key(params: &ExtBetaParams, cfg: &QuadConfig) -> MemoKey {
    [
        params.xi1.to_bits(),
        params.xi2.to_bits(),
        params.p.to_bits(),
        params.q.to_bits(),
        params.order.eta().to_bits(),
        cfg.rel_tol.to_bits(),
        cfg.abs_tol.to_bits(),
        cfg.max_levels as u64,
        cfg.max_evals as u64,
    ]
}

fn memo() -> &'static RwLock<HashMap<MemoKey, f64>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, f64>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

const MEMO_CAPACITY: usize = 1 << 20;

/// [`ext_beta`] through a process-wide memo table.
///
/// Concurrent callers may both compute a missing entry; the results are
/// identical, so the later insert is harmless.
pub fn ext_beta_cached(params: &ExtBetaParams, cfg: &QuadConfig) -> Result<f64> {
    let key = memo_key(params, cfg);
    if let Some(&v) = memo().read().expect("memo poisoned").get(&key) {
        return Ok(v);
    }
    let v = ext_beta(params, cfg)?;
    let mut table = memo().write().expect("memo poisoned");
    if table.len() >= MEMO_CAPACITY {
        table.clear();
    }
    table.entry(key).or_insert(v);
    Ok(v)
}

/// Alternative integral representations obtained by substitution into the
/// defining integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Representation {
    /// `y = cos² t` over `t ∈ (0, π/2)`.
    Trig,
    /// `y = w/(1+w)` over `w ∈ (0, ∞)`.
    SemiInfinite,
    /// `y = (1+w)/2` over `w ∈ (-1, 1)`.
    Symmetric,
    /// `y = (w-a)/(c-a)` over `w ∈ (a, c)`.
    Affine { a: f64, c: f64 },
}

impl Default for Representation {
    fn default() -> Self {
        Representation::Affine { a: 0.0, c: 1.0 }
    }
}

pub fn ext_beta_rep(params: &ExtBetaParams, rep: Representation, cfg: &QuadConfig) -> Result<f64> {
    params.validate()?;
    let ExtBetaParams {
        xi1,
        xi2,
        p,
        q,
        order,
    } = *params;
    match rep {
        Representation::Trig => {
            // cos t = sin(π/2 - t), and π/2 - t is the node's upper offset.
            let r = try_integrate_finite_with(
                |at| {
                    let sin2 = at.from_lower.sin().powi(2);
                    let cos2 = at.to_upper.sin().powi(2);
                    Ok(2.0
                        * kernel_factor(order, cos2, xi1 - 0.5, p)?
                        * kernel_factor(order, sin2, xi2 - 0.5, q)?)
                },
                0.0,
                FRAC_PI_2,
                cfg,
            )?;
            Ok(r.value)
        }
        Representation::SemiInfinite => {
            let r = try_integrate_semi_infinite_with(
                |at| {
                    let w = at.x;
                    let one_plus = 1.0 + w;
                    // w^(ξ1-1) / (1+w)^(ξ1+ξ2) = (w/(1+w))^(ξ1-1) (1/(1+w))^(ξ2+1),
                    // and the kernel arguments are p(1+w)/w and q(1+w).
                    Ok(kernel_factor(order, w / one_plus, xi1 - 1.0, p)?
                        * kernel_factor(order, one_plus.recip(), xi2 + 1.0, q)?)
                },
                0.0,
                cfg,
            )?;
            Ok(r.value)
        }
        Representation::Symmetric => {
            let r = try_integrate_finite_with(
                |at| {
                    let lo = at.from_lower; // 1 + w
                    let hi = at.to_upper; // 1 - w
                    Ok(kernel_factor(order, lo, xi1 - 1.0, 2.0 * p)?
                        * kernel_factor(order, hi, xi2 - 1.0, 2.0 * q)?)
                },
                -1.0,
                1.0,
                cfg,
            )?;
            Ok(2f64.powf(1.0 - xi1 - xi2) * r.value)
        }
        Representation::Affine { a, c } => {
            if !(a < c) || !a.is_finite() || !c.is_finite() {
                return Err(Error::domain(format!("affine representation needs a < c, got ({a}, {c})")));
            }
            let span = c - a;
            let r = try_integrate_finite_with(
                |at| {
                    Ok(kernel_factor(order, at.from_lower, xi1 - 1.0, p * span)?
                        * kernel_factor(order, at.to_upper, xi2 - 1.0, q * span)?)
                },
                a,
                c,
                cfg,
            )?;
            Ok(span.powf(1.0 - xi1 - xi2) * r.value)
        }
    }
}

/// `B(ξ1 + 1, ξ2) + B(ξ1, ξ2 + 1)`, which equals `B(ξ1, ξ2)`.
pub fn ext_beta_recurrence_rhs(params: &ExtBetaParams, cfg: &QuadConfig) -> Result<f64> {
    let left = ext_beta_cached(&params.with_xi(params.xi1 + 1.0, params.xi2)?, cfg)?;
    let right = ext_beta_cached(&params.with_xi(params.xi1, params.xi2 + 1.0)?, cfg)?;
    Ok(left + right)
}

/// `(a)_l / l!` by the running product.
pub(crate) fn binomial_series_coefficient(a: f64, l: usize) -> f64 {
    (0..l).fold(1.0, |c, k| c * (a + k as f64) / (k as f64 + 1.0))
}

/// `Σ_{l<terms} (ξ2)_l / l! · B(ξ1 + l, 1)`, converging to `B(ξ1, 1 - ξ2)`.
///
/// Here `params.xi2` is the series parameter, not a beta argument, so
/// `params` need not pass [`ExtBetaParams::validate`] itself. The target
/// `B(ξ1, 1 - ξ2)` must be admissible.
pub fn ext_beta_sum_one_minus(params: &ExtBetaParams, terms: usize, cfg: &QuadConfig) -> Result<SeriesResult> {
    let series_param = params.xi2;
    params.with_xi(params.xi1, 1.0 - series_param)?;
    if terms == 0 {
        return Err(Error::domain("need at least one term"));
    }
    sum_series(
        |l| {
            let coefficient = binomial_series_coefficient(series_param, l);
            if coefficient == 0.0 {
                return Ok(0.0);
            }
            Ok(coefficient * ext_beta_cached(&params.with_xi(params.xi1 + l as f64, 1.0)?, cfg)?)
        },
        terms,
        cfg.rel_tol,
    )
}

/// `Σ_{l<terms} B(ξ1 + l, ξ2 + 1)`, converging to `B(ξ1, ξ2)`.
pub fn ext_beta_sum_shift(params: &ExtBetaParams, terms: usize, cfg: &QuadConfig) -> Result<SeriesResult> {
    params.validate()?;
    if terms == 0 {
        return Err(Error::domain("need at least one term"));
    }
    sum_series(
        |l| ext_beta_cached(&params.with_xi(params.xi1 + l as f64, params.xi2 + 1.0)?, cfg),
        terms,
        cfg.rel_tol,
    )
}

fn check_unit(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::domain(format!("incomplete beta needs 0 <= x <= 1, got {x}")))
    }
}

/// `∫_0^x` of the defining integrand.
pub fn incomplete_lower(params: &ExtBetaParams, x: f64, cfg: &QuadConfig) -> Result<f64> {
    check_unit(x)?;
    params.validate()?;
    if x == 0.0 {
        return Ok(0.0);
    }
    ext_beta_interval(params, 0.0, x, cfg)
}

/// `∫_x^1` of the defining integrand, as the complement of [`incomplete_lower`].
pub fn incomplete_upper(params: &ExtBetaParams, x: f64, cfg: &QuadConfig) -> Result<f64> {
    check_unit(x)?;
    Ok(ext_beta_cached(params, cfg)? - incomplete_lower(params, x, cfg)?)
}
