mod common;

use common::{beta_oracle, exp_weight_beta, graded_unit_integral, rel};
use exbeta::extbeta::*;
use exbeta::{Error, QuadConfig};
use proptest::prelude::*;

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

fn params(xi1: f64, xi2: f64, p: f64, q: f64, eta: f64) -> ExtBetaParams {
    ExtBetaParams::with_eta(xi1, xi2, p, q, eta).unwrap()
}

#[test]
fn classical_examples() {
    let v = ext_beta(&params(2.0, 3.0, 0.0, 0.0, 0.5), &cfg()).unwrap();
    assert!((v - 1.0 / 12.0).abs() < 1e-15);
    assert!((v - 0.0833333333).abs() < 1e-10);
    let trig = ext_beta_rep(&params(2.0, 3.0, 0.0, 0.0, 0.5), Representation::Trig, &cfg()).unwrap();
    assert!(rel(trig, 1.0 / 12.0) < 1e-12);
    let r = ext_beta_recurrence_rhs(&params(1.0, 1.0, 0.0, 0.0, 0.5), &cfg()).unwrap();
    assert!((r - 1.0).abs() < 1e-13);
}

#[test]
fn classical_reduction_grid() {
    let axis = [0.6, 1.0, 1.7, 2.5, 4.0];
    for &a in &axis {
        for &b in &axis {
            for &eta in &[-0.5, 0.0, 0.5, 2.0] {
                let v = ext_beta(&params(a, b, 0.0, 0.0, eta), &cfg()).unwrap();
                assert!(rel(v, beta_oracle(a, b)) < 1e-10, "({a}, {b}, {eta})");
            }
        }
    }
}

#[test]
fn exponential_weight_lineage() {
    // two-parameter exponential weight, then its one-parameter diagonal
    let v = ext_beta(&params(1.5, 1.5, 0.25, 0.25, -0.5), &cfg()).unwrap();
    assert!(rel(v, exp_weight_beta(1.5, 1.5, 0.25, 0.25)) < 1e-9);
    for &(a, b, p, q) in &[(0.7, 2.2, 0.4, 1.3), (3.5, 0.9, 1.8, 0.1), (2.0, 2.0, 0.0, 0.9), (1.2, 3.1, 0.6, 0.6)] {
        let v = ext_beta(&params(a, b, p, q, -0.5), &cfg()).unwrap();
        assert!(rel(v, exp_weight_beta(a, b, p, q)) < 1e-9, "({a}, {b}, {p}, {q})");
    }
}

#[test]
fn exponential_weight_admits_any_real_exponent() {
    let v = ext_beta(&params(-2.5, 1.5, 0.8, 0.5, -0.5), &cfg()).unwrap();
    assert!(rel(v, exp_weight_beta(-2.5, 1.5, 0.8, 0.5)) < 1e-9);
}

#[test]
fn representations_agree() {
    let base = params(1.2, 2.2, 0.3, 0.1, 0.0);
    let direct = ext_beta(&base, &cfg()).unwrap();
    for rep in [
        Representation::Trig,
        Representation::SemiInfinite,
        Representation::Symmetric,
        Representation::Affine { a: -3.0, c: 7.0 },
        Representation::Affine { a: 0.0, c: 1.0 },
        Representation::Affine { a: 2.0, c: 2.5 },
    ] {
        let v = ext_beta_rep(&base, rep, &cfg()).unwrap();
        assert!(rel(v, direct) < 1e-8, "{rep:?}: {v} vs {direct}");
    }
    assert!(matches!(
        ext_beta_rep(&base, Representation::Affine { a: 1.0, c: 1.0 }, &cfg()),
        Err(Error::Domain(_))
    ));
}

#[test]
fn recurrence_examples() {
    for p in [params(1.5, 2.5, 0.2, 0.4, 0.0), params(3.0, 3.0, 1.0, 1.0, -0.5), params(0.7, 3.3, 1.9, 0.2, 2.4)] {
        let v = ext_beta(&p, &cfg()).unwrap();
        assert!(rel(ext_beta_recurrence_rhs(&p, &cfg()).unwrap(), v) < 1e-8);
    }
}

#[test]
fn shift_sum_examples() {
    let r = ext_beta_sum_shift(&params(1.0, 1.0, 0.0, 0.0, 0.5), 50, &cfg()).unwrap();
    // telescoping: Σ_{l<N} 1/((l+1)(l+2)) = 1 - 1/(N+1)
    let n = r.terms_used as f64;
    assert!((r.value - (1.0 - 1.0 / (n + 1.0))).abs() < 1e-13);
    assert!(1.0 - r.value <= 1.0 / 51.0 + 1e-13);
}

/// After `N` terms the shift sum leaves exactly `B(ξ1 + N, ξ2)` behind,
/// by repeated use of the recurrence.
#[test]
fn shift_sum_partial_identity() {
    for p in [params(2.0, 1.5, 0.3, 0.3, -0.5), params(0.8, 2.0, 0.05, 0.05, 0.5), params(1.3, 0.9, 0.6, 1.1, 0.0)] {
        let r = ext_beta_sum_shift(&p, 80, &cfg()).unwrap();
        let n = r.terms_used as f64;
        let remainder = ext_beta(&p.with_xi(p.xi1 + n, p.xi2).unwrap(), &cfg()).unwrap();
        let full = ext_beta(&p, &cfg()).unwrap();
        assert!(rel(r.value + remainder, full) < 1e-9, "{p:?}");
    }
}

fn binomial_tail(a: f64, n: usize, y: f64, ybar: f64) -> f64 {
    // (1-y)^(-a) minus its first n Taylor terms
    let mut coef = 1.0;
    let mut head = 0.0;
    let mut power = 1.0;
    for l in 0..n {
        head += coef * power;
        coef *= (a + l as f64) / (l as f64 + 1.0);
        power *= y;
    }
    if y > 0.5 {
        return ybar.powf(-a) - head;
    }
    let mut tail = 0.0;
    let mut l = n;
    loop {
        let term = coef * power;
        tail += term;
        if term.abs() < 1e-20 * tail.abs() || l > n + 4000 {
            return tail;
        }
        coef *= (a + l as f64) / (l as f64 + 1.0);
        power *= y;
        l += 1;
    }
}

/// The truncated `1 - ξ2` sum misses `∫ y^(ξ1-1) R_N(y) w(y) dy`, where
/// `R_N` is the binomial-series tail; checked with the exponential weight.
#[test]
fn one_minus_sum_partial_identity() {
    for &(a, s, p, q) in &[(1.5, 0.3, 0.1, 0.2), (2.0, 0.5, 0.0, 0.4), (0.9, 0.7, 0.5, 1.7)] {
        let base = ExtBetaParams { xi2: s, ..params(a, 1.0, p, q, -0.5) };
        let r = ext_beta_sum_one_minus(&base, 80, &cfg()).unwrap();
        let n = r.terms_used;
        let missing = graded_unit_integral(|y, ybar| {
            let w = (-p / y - q / ybar).exp();
            if w == 0.0 {
                0.0
            } else {
                y.powf(a - 1.0) * binomial_tail(s, n, y, ybar) * w
            }
        });
        let target = exp_weight_beta(a, 1.0 - s, p, q);
        assert!((r.value + missing - target).abs() < 1e-9 * target, "({a}, {s}, {p}, {q})");
    }
}

#[test]
fn one_minus_sum_converges_fast_with_exponential_weight() {
    let base = ExtBetaParams { xi2: 0.4, ..params(1.1, 1.0, 0.3, 2.0, -0.5) };
    let r = ext_beta_sum_one_minus(&base, 100, &cfg()).unwrap();
    let target = ext_beta(&base.with_xi(1.1, 0.6).unwrap(), &cfg()).unwrap();
    assert!(rel(r.value, target) < 1e-6);
}

#[test]
fn one_minus_sum_zero_parameter_is_single_term() {
    let base = ExtBetaParams { xi2: 0.0, ..params(1.4, 1.0, 0.2, 0.3, 0.0) };
    let r = ext_beta_sum_one_minus(&base, 10, &cfg()).unwrap();
    let first = ext_beta(&base.with_xi(1.4, 1.0).unwrap(), &cfg()).unwrap();
    assert_eq!(r.value, first);
}

#[test]
fn incomplete_examples() {
    let p = params(1.7, 1.7, 0.4, 0.4, 0.3);
    let full = ext_beta(&p, &cfg()).unwrap();
    assert_eq!(incomplete_lower(&p, 0.0, &cfg()).unwrap(), 0.0);
    assert!(rel(incomplete_lower(&p, 1.0, &cfg()).unwrap(), full) < 1e-12);
    assert!(rel(incomplete_lower(&p, 0.5, &cfg()).unwrap(), full / 2.0) < 1e-10);
    assert!(rel(incomplete_upper(&p, 0.0, &cfg()).unwrap(), full) < 1e-12);
    assert!(incomplete_upper(&p, 1.0, &cfg()).unwrap().abs() < 1e-12 * full);
    assert!(matches!(incomplete_lower(&p, 1.5, &cfg()), Err(Error::Domain(_))));
}

#[test]
fn parameter_validation() {
    assert!(ExtBetaParams::with_eta(0.0, 1.0, 0.0, 0.0, 0.0).is_err());
    assert!(ExtBetaParams::with_eta(-0.5, 1.0, 0.3, 0.0, 0.0).is_ok());
    assert!(ExtBetaParams::with_eta(-1.0, 1.0, 0.3, 0.0, 0.0).is_err());
    assert!(ExtBetaParams::with_eta(1.0, 1.0, -0.1, 0.0, 0.0).is_err());
    assert!(ExtBetaParams::with_eta(-0.2, 1.0, 0.3, 0.0, -0.75).is_err());
    assert!(ExtBetaParams::with_eta(1.0, f64::NAN, 0.0, 0.0, 0.0).is_err());
}

#[test]
fn lowest_orders_refuse_rather_than_guess() {
    // S_η(-p/y) for η < -1/2 is needed far below the usable series range
    let p = params(1.5, 1.5, 0.5, 0.5, -0.75);
    assert!(matches!(ext_beta(&p, &cfg()), Err(Error::CancellationLoss(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symmetry(a in 0.5f64..4.0, b in 0.5f64..4.0, p in 0.0f64..2.0, q in 0.0f64..2.0, eta in -0.45f64..3.0) {
        let x = params(a, b, p, q, eta);
        let u = ext_beta(&x, &cfg()).unwrap();
        let v = ext_beta(&x.reflected(), &cfg()).unwrap();
        prop_assert!(rel(u, v) <= 1e-12, "{} vs {}", u, v);
    }

    #[test]
    fn dominated_and_monotone(a in 0.5f64..4.0, b in 0.5f64..4.0, p in 0.0f64..2.0, q in 0.0f64..2.0,
                              dp in 0.0f64..1.0, eta in -0.45f64..3.0) {
        let v = ext_beta(&params(a, b, p, q, eta), &cfg()).unwrap();
        prop_assert!(v > 0.0);
        prop_assert!(v <= beta_oracle(a, b) * (1.0 + 1e-12));
        let vp = ext_beta(&params(a, b, p + dp, q, eta), &cfg()).unwrap();
        let vq = ext_beta(&params(a, b, p, q + dp, eta), &cfg()).unwrap();
        prop_assert!(vp <= v * (1.0 + 1e-12) && vq <= v * (1.0 + 1e-12));
    }

    #[test]
    fn representation_agreement(a in 0.5f64..4.0, b in 0.5f64..4.0, p in 0.0f64..2.0, q in 0.0f64..2.0, eta in -0.4f64..3.0) {
        let x = params(a, b, p, q, eta);
        let direct = ext_beta(&x, &cfg()).unwrap();
        for rep in [Representation::Trig, Representation::SemiInfinite, Representation::Symmetric,
                    Representation::Affine { a: -3.0, c: 7.0 }] {
            let v = ext_beta_rep(&x, rep, &cfg()).unwrap();
            prop_assert!(rel(v, direct) < 1e-8, "{:?}: {} vs {}", rep, v, direct);
        }
    }

    #[test]
    fn recurrence(a in 0.5f64..4.0, b in 0.5f64..4.0, p in 0.0f64..2.0, q in 0.0f64..2.0, eta in -0.4f64..3.0) {
        let x = params(a, b, p, q, eta);
        let v = ext_beta(&x, &cfg()).unwrap();
        prop_assert!(rel(ext_beta_recurrence_rhs(&x, &cfg()).unwrap(), v) <= 1e-8);
    }

    #[test]
    fn incomplete_additivity(a in 0.5f64..4.0, b in 0.5f64..4.0, p in 0.0f64..2.0, q in 0.0f64..2.0,
                             eta in -0.4f64..3.0, x in 0.0f64..1.0) {
        let ps = params(a, b, p, q, eta);
        let full = ext_beta_cached(&ps, &cfg()).unwrap();
        let sum = incomplete_lower(&ps, x, &cfg()).unwrap() + incomplete_upper(&ps, x, &cfg()).unwrap();
        prop_assert!(rel(sum, full) <= 1e-12);
    }
}
