//! Build Bell-diagonal qutrit states, inspect the block form of the partial
//! transpose and classify a few tables.

use qutrit_distill::simplex::{
    assemble_pt_from_blocks, build_state, classify, pt_block, sample_simplex, SimplexCoefficients,
};
use qutrit_distill::linalg::hermitian_eigensystem;
use qutrit_distill::Dimension;

fn main() {
    let dim = Dimension::new(3).unwrap();

    let s = sample_simplex(&dim, 2024);
    println!("random table (seed 2024):\n{s}");
    let direct = build_state(&s).partial_transpose();
    println!("block reassembly error: {:.2e}", assemble_pt_from_blocks(&s).max_abs_diff(&direct));
    for m in 0..3 {
        let spec = hermitian_eigensystem(&pt_block(&s, m).unwrap()).unwrap().eigenvalues;
        println!("  spec B_{m} = {spec:.6?}");
    }
    let report = classify(&s);
    println!("classification {} with lambda_min {:.6}\n", report.classification, report.lambda_min);

    for p in [0.0, 0.5, 0.74, 0.76, 1.0] {
        let iso = SimplexCoefficients::isotropic(dim.clone(), p).unwrap();
        let r = classify(&iso);
        println!("isotropic p = {p:.2}: {:<8} lambda_min = {:+.6}", r.classification.to_string(), r.lambda_min);
    }
}
