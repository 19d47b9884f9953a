//! Tabulate the Bessel-Struve kernel for several orders, including the large
//! negative arguments where the power series is replaced by the integral
//! representation and the asymptotic expansion.
use exbeta::kernel::kernel_eval;
use exbeta::KernelOrder;

fn main() -> exbeta::Result<()> {
    let ts = [-500.0, -80.0, -40.0, -20.0, -5.0, -1.0, 0.0, 1.0, 5.0];
    print!("{:>8}", "t");
    let etas = [-0.5, 0.0, 0.5, 1.5, 4.0];
    for eta in etas {
        print!("{:>24}", format!("eta={eta}"));
    }
    println!();
    for t in ts {
        print!("{t:>8}");
        for eta in etas {
            let v = kernel_eval(KernelOrder::new(eta)?, t)?;
            print!("{v:>24.15e}");
        }
        println!();
    }
    // Orders below -1/2 have no integral form; far out the series cancels.
    let low = KernelOrder::new(-0.75)?;
    match kernel_eval(low, -45.0) {
        Ok(v) => println!("S_-0.75(-45) = {v:e}"),
        Err(e) => println!("S_-0.75(-45): {e}"),
    }
    Ok(())
}
