//! Moments, transforms and the distribution function of the extended beta
//! distribution.
use exbeta::distribution::{ExtBetaDistribution, DEFAULT_MGF_TERMS};
use exbeta::extbeta::ExtBetaParams;
use exbeta::QuadConfig;

fn main() -> exbeta::Result<()> {
    let params = ExtBetaParams::with_eta(2.0, 5.0, 0.1, 0.4, 0.0)?;
    let d = ExtBetaDistribution::new(params, QuadConfig::default())?;
    println!("normalizer      {:.15e}", d.normalizer());
    println!("mean            {:.15e}", d.mean()?);
    println!("variance        {:.15e}", d.variance()?);
    println!("coeff variation {:.15e}", d.coeff_variation()?);
    println!("E[Y^0.5]        {:.15e}", d.moment(0.5)?);
    for t in [-2.0, 0.5, 3.0] {
        let m = d.mgf(t, DEFAULT_MGF_TERMS)?;
        let c = d.char_fn(t, DEFAULT_MGF_TERMS)?;
        println!("t={t:>4}: mgf {:.12e} (tail <= {:.1e}), charfn {:.12e} {:+.12e}i", m.value, m.tail_estimate, c.re, c.im);
    }
    println!("{:>6} {:>20} {:>20} {:>20}", "x", "pdf", "cdf", "reliability");
    for i in 1..10 {
        let x = i as f64 / 10.0;
        println!("{x:>6} {:>20.12e} {:>20.12e} {:>20.12e}", d.pdf(x)?, d.cdf(x)?, d.reliability(x)?);
    }
    Ok(())
}
