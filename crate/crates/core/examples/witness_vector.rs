//! Construct the rank-2 negative eigenvector of the partial transpose for a
//! random NPT table and show the intermediate data.

use qutrit_distill::simplex::sample_npt;
use qutrit_distill::witness::construct_witness_vector;
use qutrit_distill::Dimension;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let s = sample_npt(&Dimension::new(3).unwrap(), seed, 10_000).unwrap();
    println!("NPT table (seed {seed}):\n{s}");

    let wc = construct_witness_vector(&s).unwrap();
    println!("lambda_min        {:+.12}", wc.lambda_min);
    println!("PT spectrum       {:.6?}", wc.pt_spectrum.eigenvalues);
    println!("det C             {:.2e}", wc.det_c.norm());
    println!("2x2 minors        {:.6?}", wc.minors.map(|m| m.norm()));
    println!("singular values   {:.6?}", wc.schmidt.singular_values);
    println!("Schmidt rank      {}", wc.schmidt.rank);
    println!("phi:");
    for (i, z) in wc.phi.iter().enumerate() {
        println!("  |{},{}>  {:+.6} {:+.6}i", i / 3, i % 3, z.re, z.im);
    }
}
