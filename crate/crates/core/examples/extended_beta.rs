//! Evaluate the extended beta function through the defining integral and
//! each of its alternative representations.
use exbeta::extbeta::{ext_beta, ext_beta_rep, ExtBetaParams, Representation};
use exbeta::QuadConfig;
use std::time::Instant;

fn main() -> exbeta::Result<()> {
    let cfg = QuadConfig::default();
    for &(xi1, xi2, p, q, eta) in &[
        (2.0, 3.0, 0.0, 0.0, 0.5),
        (1.5, 2.5, 0.5, 0.5, -0.5),
        (1.5, 2.5, 0.5, 0.5, 0.0),
        (0.7, 1.2, 2.0, 0.1, 1.5),
        (-0.5, 2.0, 1.0, 1.0, 0.0),
    ] {
        let params = ExtBetaParams::with_eta(xi1, xi2, p, q, eta)?;
        let start = Instant::now();
        let direct = ext_beta(&params, &cfg)?;
        let elapsed = start.elapsed();
        println!("B(ξ1={xi1}, ξ2={xi2}; p={p}, q={q}; η={eta}) = {direct:.15e}  [{elapsed:?}]");
        for rep in [
            Representation::Trig,
            Representation::SemiInfinite,
            Representation::Symmetric,
            Representation::Affine { a: -2.0, c: 3.0 },
        ] {
            let v = ext_beta_rep(&params, rep, &cfg)?;
            println!("  {rep:?}: {v:.15e}  rel diff {:.1e}", (v / direct - 1.0).abs());
        }
    }
    Ok(())
}
