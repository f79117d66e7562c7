//! Run the invariant battery on random NPT states and print the summary.
//!
//!     cargo run --release --example verify_campaign -- 1000 42

use qutrit_distill::report::{verify, VerifyConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);
    let report = verify(&VerifyConfig::new(count, seed)).unwrap();
    print!("{}", report.summary);
    std::process::exit(report.outcome().code());
}
