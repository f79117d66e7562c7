//! Project a qutrit pair onto the two-dimensional Schmidt supports of the
//! witness vector and compare noise robustness before and after.

use qutrit_distill::filter::{filter_report, qubit_more_robust_by_q};
use qutrit_distill::simplex::{build_state, sample_npt, SimplexCoefficients};
use qutrit_distill::witness::construct_witness_vector;
use qutrit_distill::Dimension;

fn show(label: &str, s: &SimplexCoefficients) {
    let wc = construct_witness_vector(s).unwrap();
    let r = filter_report(&build_state(s), &wc).unwrap();
    println!("{label}");
    println!("  q = {:.6}   sigma^G spectrum {:.6?}", r.q, r.sigma_pt_spectrum);
    println!("  p_rho_max = {:.6}   p_sigma_max = {:.6}   {}", r.p_rho_max, r.p_sigma_max, r.verdict);
    println!("  q < 4/9: {}", qubit_more_robust_by_q(r.q, 3));
}

fn main() {
    let dim = Dimension::new(3).unwrap();
    show("pure Bell state", &SimplexCoefficients::pure_bell(dim.clone()));
    for seed in [1, 2, 3] {
        show(&format!("random NPT table, seed {seed}"), &sample_npt(&dim, seed, 10_000).unwrap());
    }
}
