//! Reproducible sampling by inversion of the tabulated distribution function,
//! compared against the exact mean and variance.
use exbeta::distribution::ExtBetaDistribution;
use exbeta::extbeta::ExtBetaParams;
use exbeta::QuadConfig;

fn main() -> exbeta::Result<()> {
    let params = ExtBetaParams::with_eta(3.0, 2.0, 0.5, 0.5, 1.0)?;
    let d = ExtBetaDistribution::new(params, QuadConfig::default())?;
    let n = 100_000;
    let draws = d.sample(n, 2024)?;
    let mean = draws.iter().sum::<f64>() / n as f64;
    let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let (exact_mean, exact_var) = (d.mean()?, d.variance()?);
    println!("sample mean {mean:.6} vs {exact_mean:.6} (4 sigma = {:.2e})", 4.0 * (exact_var / n as f64).sqrt());
    println!("sample var  {var:.6} vs {exact_var:.6}");
    println!("first draws with seed 7: {:?}", d.sample(5, 7)?);
    for u in [0.01, 0.25, 0.5, 0.75, 0.99] {
        println!("quantile({u}) = {:.10}", d.quantile(u)?);
    }
    Ok(())
}
