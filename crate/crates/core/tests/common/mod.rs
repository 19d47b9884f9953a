//! Independent oracles for the integration tests: arbitrary-precision
//! series built on MPFR, and a graded Gauss-Legendre rule that shares no
//! code with the library's quadrature.
#![allow(dead_code)]

use rug::ops::Pow;
use rug::Float;

fn bits_for(t: f64) -> u32 {
    // the largest term of the alternating series is about e^|t|
    192 + (t.abs() * std::f64::consts::LOG2_E * 1.1).ceil() as u32
}

/// Kernel power series summed term by term with MPFR gamma values.
pub fn kernel_oracle(eta: f64, t: f64) -> f64 {
    let prec = bits_for(t);
    let f = |x: f64| Float::with_val(prec, x);
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    // shifted orders are formed in MPFR: an f64 `eta + 1` rounds, and the
    // alternating series amplifies that by about e^|t|
    let eta1 = f(eta) + 1u32;
    let prefactor = eta1.clone().gamma() / pi.sqrt();
    let tt = f(t);
    let mut sum = Float::with_val(prec, 0);
    let max_m = (4.0 * t.abs()).ceil() as u32 + 120;
    for m in 0..=max_m {
        let mf = m as f64;
        let num = tt.clone().pow(m) * f((mf + 1.0) / 2.0).gamma();
        let den = f(mf + 1.0).gamma() * (eta1.clone() + mf / 2.0).gamma();
        sum += num / den;
    }
    (sum * prefactor).to_f64()
}

/// `Γ(z) / Γ(z + 1/2)`.
pub fn gamma_ratio_half_oracle(z: f64) -> f64 {
    let a = Float::with_val(256, z);
    let b = Float::with_val(256, z + 0.5);
    (a.ln_gamma() - b.ln_gamma()).exp().to_f64()
}

/// Classical beta function in 256-bit precision.
pub fn beta_oracle(a: f64, b: f64) -> f64 {
    let lg = |x: f64| Float::with_val(256, x).ln_gamma();
    (lg(a) + lg(b) - lg(a + b)).exp().to_f64()
}

/// Classical Gauss function by direct summation, `|x| < 1`.
pub fn hyp2f1_oracle(a: f64, b: f64, c: f64, x: f64) -> f64 {
    let prec = 256;
    let mut term = Float::with_val(prec, 1);
    let mut sum = Float::with_val(prec, 1);
    let eps = Float::with_val(prec, 1e-40);
    for l in 0..200_000u32 {
        let lf = l as f64;
        term *= Float::with_val(prec, (a + lf) * (b + lf)) / Float::with_val(prec, (c + lf) * (lf + 1.0));
        term *= x;
        sum += &term;
        if l > 10 && term.clone().abs() < eps.clone() * sum.clone().abs() {
            break;
        }
    }
    sum.to_f64()
}

/// Classical confluent function by direct summation.
pub fn hyp1f1_oracle(b: f64, c: f64, x: f64) -> f64 {
    let prec = 256 + (x.abs() * 2.0) as u32;
    let mut term = Float::with_val(prec, 1);
    let mut sum = Float::with_val(prec, 1);
    let eps = Float::with_val(prec, 1e-40);
    for l in 0..100_000u32 {
        let lf = l as f64;
        term *= Float::with_val(prec, b + lf) / Float::with_val(prec, (c + lf) * (lf + 1.0));
        term *= x;
        sum += &term;
        if lf > x.abs() && term.clone().abs() < eps.clone() * sum.clone().abs() {
            break;
        }
    }
    sum.to_f64()
}

fn legendre_nodes(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Composite 24-point Gauss-Legendre on `(0, 1)` with panels graded
/// geometrically toward both endpoints; `f` receives `(y, 1 - y)`.
pub fn graded_unit_integral<F: Fn(f64, f64) -> f64>(f: F) -> f64 {
    let nodes = legendre_nodes(24);
    let mut breaks = vec![0.0];
    for j in (1..=400).rev() {
        breaks.push(0.5f64.powi(j));
    }
    let n = breaks.len();
    // mirror image for the upper half, tracked as offsets from 1
    let mut total = 0.0;
    let panel = |lo: f64, hi: f64, reflect: bool| -> f64 {
        let (c, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        nodes
            .iter()
            .map(|&(x, w)| {
                let d = c + h * x;
                let v = if reflect { f(1.0 - d, d) } else { f(d, 1.0 - d) };
                w * h * v
            })
            .sum()
    };
    for i in 0..n - 1 {
        total += panel(breaks[i], breaks[i + 1], false);
        total += panel(breaks[i], breaks[i + 1], true);
    }
    total
}

/// Exponential-weight beta integral `∫ y^(a-1) (1-y)^(b-1) e^{-p/y - q/(1-y)} dy`.
pub fn exp_weight_beta(a: f64, b: f64, p: f64, q: f64) -> f64 {
    exp_weight_moment(a, b, p, q, |_, _| 1.0)
}

/// Exponential-weight beta integral with an extra factor `g(y, 1-y)`.
pub fn exp_weight_moment<G: Fn(f64, f64) -> f64>(a: f64, b: f64, p: f64, q: f64, g: G) -> f64 {
    graded_unit_integral(|y, ybar| {
        let w = (-p / y - q / ybar).exp();
        if w == 0.0 {
            return 0.0;
        }
        y.powf(a - 1.0) * ybar.powf(b - 1.0) * w * g(y, ybar)
    })
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
