//! Extended Gauss and confluent hypergeometric functions: series against
//! integral forms, derivatives, and the two transformation formulas.
use exbeta::hypergeometric::*;
use exbeta::QuadConfig;

fn main() -> exbeta::Result<()> {
    let cfg = QuadConfig::default();
    let gp = GaussParams::with_eta(0.8, 1.3, 3.1, 0.4, 0.2, 0.5)?;
    for x in [-0.8, -0.3, 0.0, 0.4, 0.85] {
        let s = gauss_series(&gp, x, DEFAULT_MAX_TERMS, &cfg)?;
        let i = gauss_integral(&gp, x, &cfg)?;
        println!("F({x:>5}) series {:.14e} ({} terms)  integral {i:.14e}", s.value, s.terms_used);
    }
    let x = 0.3;
    println!("F'(0.3)   {:.14e}", gauss_derivative(&gp, x, 1, DEFAULT_MAX_TERMS, &cfg)?);
    println!("Pfaff RHS {:.14e}", gauss_transform_rhs(&gp, x, DEFAULT_MAX_TERMS, &cfg)?);
    let lhs = gauss_generating_lhs(&gp, 0.2, 0.4, DEFAULT_MAX_TERMS, &cfg)?;
    let rhs = gauss_generating_rhs(&gp, 0.2, 0.4, DEFAULT_MAX_TERMS, &cfg)?;
    println!("generating sum {:.14e} vs closed form {rhs:.14e}", lhs.value);

    let cp = ConfluentParams::with_eta(1.3, 3.1, 0.4, 0.2, 0.5)?;
    for x in [-4.0, 0.0, 2.5] {
        let s = confluent_series(&cp, x, DEFAULT_MAX_TERMS, &cfg)?.value;
        let i = confluent_integral(&cp, x, &cfg)?;
        let r = confluent_integral_alt(&cp, x, &cfg)?;
        let k = confluent_transform_rhs(&cp, x, DEFAULT_MAX_TERMS, &cfg)?;
        println!("Phi({x:>4}) series {s:.14e} integral {i:.14e} reflected {r:.14e} Kummer {k:.14e}");
    }
    Ok(())
}
