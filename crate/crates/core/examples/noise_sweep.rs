//! Sweep white noise over a random NPT state and write the CSV that the
//! `sweep` subcommand produces.

use qutrit_distill::report::{sweep, write_sweep_csv};
use qutrit_distill::simplex::sample_npt;
use qutrit_distill::Dimension;

fn main() {
    let s = sample_npt(&Dimension::new(3).unwrap(), 5, 10_000).unwrap();
    let result = sweep(&s, 0.0, 1.0, 21).unwrap();
    write_sweep_csv(std::io::stdout().lock(), &result).unwrap();
}
