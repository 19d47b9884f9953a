//! Gauss and confluent hypergeometric functions whose beta-ratio
//! coefficients carry the Bessel-Struve weight:
//!
//! ```text
//! F(ξ1, ξ2; ξ3; x) = Σ (ξ1)_l B_η^{p,q}(ξ2+l, ξ3-ξ2) / B(ξ2, ξ3-ξ2) · x^l/l!
//! Φ(ξ2; ξ3; x)     = Σ        B_η^{p,q}(ξ2+l, ξ3-ξ2) / B(ξ2, ξ3-ξ2) · x^l/l!
//! ```

use crate::error::{Error, Result};
use crate::extbeta::{binomial_series_coefficient, ext_beta_cached, integrate_weighted, ExtBetaParams};
use crate::kernel::KernelOrder;
use crate::quadrature::QuadConfig;
use crate::series::{sum_series, SeriesResult};
use crate::special::beta;

/// Default hard cap on series terms.
pub const DEFAULT_MAX_TERMS: usize = 500;

/// Rising factorial `a (a+1) ... (a+l-1)`.
pub fn pochhammer(a: f64, l: usize) -> f64 {
    (0..l).fold(1.0, |acc, k| acc * (a + k as f64))
}

fn check_slots(xi2: f64, xi3: f64, p: f64, q: f64) -> Result<()> {
    if !(xi2 > 0.0 && xi3 > xi2 && xi3.is_finite()) {
        return Err(Error::domain(format!("need ξ3 > ξ2 > 0, got ξ2 = {xi2}, ξ3 = {xi3}")));
    }
    if !(p >= 0.0 && p.is_finite() && q >= 0.0 && q.is_finite()) {
        return Err(Error::domain("p and q must be finite and non-negative"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussParams {
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
    pub p: f64,
    pub q: f64,
    pub order: KernelOrder,
}

impl GaussParams {
    pub fn new(xi1: f64, xi2: f64, xi3: f64, p: f64, q: f64, order: KernelOrder) -> Result<Self> {
        if !xi1.is_finite() {
            return Err(Error::domain("ξ1 must be finite"));
        }
        check_slots(xi2, xi3, p, q)?;
        Ok(Self {
            xi1,
            xi2,
            xi3,
            p,
            q,
            order,
        })
    }

    pub fn with_eta(xi1: f64, xi2: f64, xi3: f64, p: f64, q: f64, eta: f64) -> Result<Self> {
        Self::new(xi1, xi2, xi3, p, q, KernelOrder::new(eta)?)
    }

    fn confluent(&self) -> ConfluentParams {
        ConfluentParams {
            xi2: self.xi2,
            xi3: self.xi3,
            p: self.p,
            q: self.q,
            order: self.order,
        }
    }

    fn shifted(&self, d1: f64, d2: f64, d3: f64) -> Result<Self> {
        Self::new(self.xi1 + d1, self.xi2 + d2, self.xi3 + d3, self.p, self.q, self.order)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfluentParams {
    pub xi2: f64,
    pub xi3: f64,
    pub p: f64,
    pub q: f64,
    pub order: KernelOrder,
}

impl ConfluentParams {
    pub fn new(xi2: f64, xi3: f64, p: f64, q: f64, order: KernelOrder) -> Result<Self> {
        check_slots(xi2, xi3, p, q)?;
        Ok(Self {
            xi2,
            xi3,
            p,
            q,
            order,
        })
    }

    pub fn with_eta(xi2: f64, xi3: f64, p: f64, q: f64, eta: f64) -> Result<Self> {
        Self::new(xi2, xi3, p, q, KernelOrder::new(eta)?)
    }

    /// Beta parameters `(ξ2, ξ3 - ξ2, p, q, η)` of the integral forms.
    fn beta_params(&self) -> Result<ExtBetaParams> {
        ExtBetaParams::new(self.xi2, self.xi3 - self.xi2, self.p, self.q, self.order)
    }

    fn classical_norm(&self) -> f64 {
        beta(self.xi2, self.xi3 - self.xi2)
    }

    /// `B_η^{p,q}(ξ2 + l, ξ3 - ξ2) / B(ξ2, ξ3 - ξ2)`.
    pub fn coefficient(&self, l: usize, cfg: &QuadConfig) -> Result<f64> {
        let params = ExtBetaParams::new(
            self.xi2 + l as f64,
            self.xi3 - self.xi2,
            self.p,
            self.q,
            self.order,
        )?;
        Ok(ext_beta_cached(&params, cfg)? / self.classical_norm())
    }

    fn shifted(&self, d2: f64, d3: f64) -> Result<Self> {
        Self::new(self.xi2 + d2, self.xi3 + d3, self.p, self.q, self.order)
    }

    fn swap_weights(&self) -> Self {
        Self {
            p: self.q,
            q: self.p,
            ..*self
        }
    }
}

fn check_terms(terms: usize) -> Result<()> {
    if terms == 0 {
        Err(Error::domain("need at least one term"))
    } else {
        Ok(())
    }
}

/// Gauss series summed to at most `terms` terms; requires `|x| < 1`.
pub fn gauss_series(gp: &GaussParams, x: f64, terms: usize, cfg: &QuadConfig) -> Result<SeriesResult> {
    check_terms(terms)?;
    if !(x.abs() < 1.0) {
        return Err(Error::non_convergence(format!("Gauss series diverges for |x| = {}", x.abs())));
    }
    let cp = gp.confluent();
    let mut power = 1.0;
    sum_series(
        |l| {
            if l > 0 {
                power *= x;
            }
            let lead = binomial_series_coefficient(gp.xi1, l) * power;
            if lead == 0.0 {
                return Ok(0.0);
            }
            Ok(lead * cp.coefficient(l, cfg)?)
        },
        terms,
        cfg.rel_tol,
    )
}

/// Confluent series summed to at most `terms` terms; entire in `x`.
pub fn confluent_series(cp: &ConfluentParams, x: f64, terms: usize, cfg: &QuadConfig) -> Result<SeriesResult> {
    check_terms(terms)?;
    if !x.is_finite() {
        return Err(Error::domain("x must be finite"));
    }
    let mut lead = 1.0;
    sum_series(
        |l| {
            if l > 0 {
                lead *= x / l as f64;
            }
            if lead == 0.0 {
                return Ok(0.0);
            }
            Ok(lead * cp.coefficient(l, cfg)?)
        },
        terms,
        cfg.rel_tol,
    )
}

/// Integral form of the Gauss function, real branch `x < 1`.
pub fn gauss_integral(gp: &GaussParams, x: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(x < 1.0) {
        return Err(Error::domain(format!("Gauss integral needs x < 1, got {x}")));
    }
    let cp = gp.confluent();
    let params = cp.beta_params()?;
    let a = gp.xi1;
    let v = integrate_weighted(
        &params,
        0.0,
        1.0,
        |y, ybar| {
            // 1 - yx, rewritten near y = 1 so that 1 - x is not lost
            let base = if y <= 0.5 { 1.0 - y * x } else { (1.0 - x) + x * ybar };
            base.powf(-a)
        },
        cfg,
    )?;
    Ok(v / cp.classical_norm())
}

/// Integral form of the confluent function.
pub fn confluent_integral(cp: &ConfluentParams, x: f64, cfg: &QuadConfig) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain("x must be finite"));
    }
    let v = integrate_weighted(&cp.beta_params()?, 0.0, 1.0, |y, _| (x * y).exp(), cfg)?;
    Ok(v / cp.classical_norm())
}

/// The reflected integral form
/// `e^x / B · ∫ (1-y)^(ξ2-1) y^(ξ3-ξ2-1) e^{-xy} S_η(-p/(1-y)) S_η(-q/y) dy`.
pub fn confluent_integral_alt(cp: &ConfluentParams, x: f64, cfg: &QuadConfig) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain("x must be finite"));
    }
    let params = cp.beta_params()?.reflected();
    let v = integrate_weighted(&params, 0.0, 1.0, |y, _| (-x * y).exp(), cfg)?;
    Ok(x.exp() * v / cp.classical_norm())
}

/// `d^k/dx^k` of the Gauss function through the parameter-shift formula.
pub fn gauss_derivative(gp: &GaussParams, x: f64, k: usize, terms: usize, cfg: &QuadConfig) -> Result<f64> {
    let factor = pochhammer(gp.xi1, k) * pochhammer(gp.xi2, k) / pochhammer(gp.xi3, k);
    let shift = k as f64;
    Ok(factor * gauss_series(&gp.shifted(shift, shift, shift)?, x, terms, cfg)?.value)
}

/// `d^k/dx^k` of the confluent function through the parameter-shift formula.
pub fn confluent_derivative(cp: &ConfluentParams, x: f64, k: usize, terms: usize, cfg: &QuadConfig) -> Result<f64> {
    let factor = pochhammer(cp.xi2, k) / pochhammer(cp.xi3, k);
    let shift = k as f64;
    Ok(factor * confluent_series(&cp.shifted(shift, shift)?, x, terms, cfg)?.value)
}

/// Slot assignments for the right side of the Pfaff-type transformation
/// `F(ξ1, ξ2; ξ3; x) = (1-x)^(-ξ1) F(ξ1, ξ3-ξ2; · ; -x/(1-x))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PfaffVariant {
    /// Third slot `ξ2`, weights `(p, q)` unchanged.
    AsPrinted,
    /// Third slot `ξ3`, weights `(p, q)` unchanged.
    ThirdSlot,
    /// Third slot `ξ3`, weights exchanged to `(q, p)`; this follows from
    /// `y -> 1 - y` in the integral form.
    Reflected,
}

impl PfaffVariant {
    pub const ALL: [PfaffVariant; 3] = [Self::AsPrinted, Self::ThirdSlot, Self::Reflected];

    pub fn label(self) -> &'static str {
        match self {
            Self::AsPrinted => "third slot xi2, weights (p,q)",
            Self::ThirdSlot => "third slot xi3, weights (p,q)",
            Self::Reflected => "third slot xi3, weights (q,p)",
        }
    }
}

/// Right side of the Pfaff-type transformation for the requested slot
/// assignment; needs `x < 1/2` so that the transformed series converges.
pub fn gauss_transform_rhs_variant(
    gp: &GaussParams,
    x: f64,
    variant: PfaffVariant,
    terms: usize,
    cfg: &QuadConfig,
) -> Result<f64> {
    if !(x < 1.0) {
        return Err(Error::domain(format!("transformation needs x < 1, got {x}")));
    }
    let z = -x / (1.0 - x);
    let upper = gp.xi3 - gp.xi2;
    let transformed = match variant {
        PfaffVariant::AsPrinted => GaussParams::new(gp.xi1, upper, gp.xi2, gp.p, gp.q, gp.order)?,
        PfaffVariant::ThirdSlot => GaussParams::new(gp.xi1, upper, gp.xi3, gp.p, gp.q, gp.order)?,
        PfaffVariant::Reflected => GaussParams::new(gp.xi1, upper, gp.xi3, gp.q, gp.p, gp.order)?,
    };
    Ok((1.0 - x).powf(-gp.xi1) * gauss_series(&transformed, z, terms, cfg)?.value)
}

/// `(1-x)^(-ξ1) F_{q,p}(ξ1, ξ3-ξ2; ξ3; -x/(1-x))`, equal to `F(ξ1, ξ2; ξ3; x)`.
pub fn gauss_transform_rhs(gp: &GaussParams, x: f64, terms: usize, cfg: &QuadConfig) -> Result<f64> {
    gauss_transform_rhs_variant(gp, x, PfaffVariant::Reflected, terms, cfg)
}

/// Weight assignments for the Kummer-type transformation
/// `Φ(ξ2; ξ3; x) = e^x Φ(ξ3-ξ2; ξ3; -x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KummerVariant {
    /// Weights `(p, q)` unchanged.
    AsPrinted,
    /// Weights exchanged to `(q, p)`.
    Reflected,
}

impl KummerVariant {
    pub const ALL: [KummerVariant; 2] = [Self::AsPrinted, Self::Reflected];

    pub fn label(self) -> &'static str {
        match self {
            Self::AsPrinted => "weights (p,q)",
            Self::Reflected => "weights (q,p)",
        }
    }
}

pub fn confluent_transform_rhs_variant(
    cp: &ConfluentParams,
    x: f64,
    variant: KummerVariant,
    terms: usize,
    cfg: &QuadConfig,
) -> Result<f64> {
    let base = ConfluentParams::new(cp.xi3 - cp.xi2, cp.xi3, cp.p, cp.q, cp.order)?;
    let transformed = match variant {
        KummerVariant::AsPrinted => base,
        KummerVariant::Reflected => base.swap_weights(),
    };
    Ok(x.exp() * confluent_series(&transformed, -x, terms, cfg)?.value)
}

/// `e^x Φ_{q,p}(ξ3-ξ2; ξ3; -x)`, equal to `Φ(ξ2; ξ3; x)`.
pub fn confluent_transform_rhs(cp: &ConfluentParams, x: f64, terms: usize, cfg: &QuadConfig) -> Result<f64> {
    confluent_transform_rhs_variant(cp, x, KummerVariant::Reflected, terms, cfg)
}

/// `Σ_{k<k_terms} (ξ1)_k F(ξ1+k, ξ2; ξ3; x) z^k/k!`, each inner series
/// capped at [`DEFAULT_MAX_TERMS`].
pub fn gauss_generating_lhs(
    gp: &GaussParams,
    x: f64,
    z: f64,
    k_terms: usize,
    cfg: &QuadConfig,
) -> Result<SeriesResult> {
    check_terms(k_terms)?;
    if !(z.abs() < 1.0) {
        return Err(Error::non_convergence(format!("generating sum needs |z| < 1, got {z}")));
    }
    let mut power = 1.0;
    sum_series(
        |k| {
            if k > 0 {
                power *= z;
            }
            let lead = binomial_series_coefficient(gp.xi1, k) * power;
            if lead == 0.0 {
                return Ok(0.0);
            }
            let inner = gauss_series(&gp.shifted(k as f64, 0.0, 0.0)?, x, DEFAULT_MAX_TERMS, cfg)?;
            Ok(lead * inner.value)
        },
        k_terms,
        cfg.rel_tol,
    )
}

/// `(1-z)^(-ξ1) F(ξ1, ξ2; ξ3; x/(1-z))`.
pub fn gauss_generating_rhs(gp: &GaussParams, x: f64, z: f64, terms: usize, cfg: &QuadConfig) -> Result<f64> {
    if !(z < 1.0) {
        return Err(Error::domain(format!("generating function needs z < 1, got {z}")));
    }
    Ok((1.0 - z).powf(-gp.xi1) * gauss_series(gp, x / (1.0 - z), terms, cfg)?.value)
}
