//! Run the seeded identity suites and print the report table.
use exbeta::verify::{run, VerifyOptions};

fn main() {
    let opts = VerifyOptions {
        seed: std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42),
        ..VerifyOptions::default()
    };
    let report = run(&opts);
    print!("{}", report.render(opts.seed, opts.cases));
    if !report.all_passed() {
        std::process::exit(1);
    }
}
