//! Classical gamma and beta values the rest of the crate leans on.

use crate::dd::{DoubleDouble, HALF_LN_2PI};

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `ln B(a, b)` for `a, b > 0`.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Classical beta function `Γ(a)Γ(b)/Γ(a+b)` for `a, b > 0`.
pub fn beta(a: f64, b: f64) -> f64 {
    ln_beta(a, b).exp()
}

// (B_2k numerator, B_2k denominator) for k = 1..=14.
const BERNOULLI: [(f64, f64); 14] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
];

/// Stirling correction `ln Γ(w) - [(w - 1/2) ln w - w + ln(2π)/2]`, valid for `w >= 25`.
fn stirling_tail(w: DoubleDouble) -> DoubleDouble {
    let inv = w.recip();
    let inv2 = inv.square();
    let mut pow = inv;
    let mut sum = DoubleDouble::ZERO;
    for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        sum = sum + pow.mul_f64(num).div_f64(den * two_k * (two_k - 1.0));
        pow = pow * inv2;
    }
    sum
}

/// `ln Γ(w)` in double-double for `w >= 25`.
fn ln_gamma_large(w: DoubleDouble) -> DoubleDouble {
    (w - DoubleDouble::from_f64(0.5)) * w.ln() - w + HALF_LN_2PI + stirling_tail(w)
}

/// `Γ(z) / Γ(z + 1/2)` in double-double precision for `z > 0`.
///
/// The arguments are shifted up to at least 25 by the functional equation
/// and the Stirling series (truncated at B_28) is applied to the shifted pair.
pub fn gamma_ratio_half(z: DoubleDouble) -> DoubleDouble {
    assert!(z.hi > 0.0, "gamma ratio needs a positive argument");
    let half = DoubleDouble::from_f64(0.5);
    let shift = (25.0 - z.hi).ceil().max(0.0) as usize;
    let mut correction = DoubleDouble::ONE;
    for j in 0..shift {
        let base = z + DoubleDouble::from_f64(j as f64);
        correction = correction * (base + half) / base;
    }
    let w = z + DoubleDouble::from_f64(shift as f64);
    let log_ratio = ln_gamma_large(w) - ln_gamma_large(w + half);
    log_ratio.exp() * correction
}
