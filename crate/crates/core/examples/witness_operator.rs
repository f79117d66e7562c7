//! The partially transposed projector onto the witness vector: spectrum,
//! detection value and a Monte-Carlo check of block positivity.

use qutrit_distill::linalg::hermitian_eigensystem;
use qutrit_distill::simplex::{build_state, sample_npt};
use qutrit_distill::witness::{construct_witness_vector, detect, product_vector_positivity_check, witness_operator};
use qutrit_distill::{DensityMatrix, Dimension};

fn main() {
    let s = sample_npt(&Dimension::new(3).unwrap(), 11, 10_000).unwrap();
    let wc = construct_witness_vector(&s).unwrap();
    let w = witness_operator(&wc);

    println!("spectrum  {:.6?}", hermitian_eigensystem(&w.w_phi).unwrap().eigenvalues);
    println!("expected  {:.6?}", w.expected_spectrum());
    println!("tr(W rho)            {:+.6}", detect(&w, &build_state(&s)).unwrap());
    println!("lambda_min           {:+.6}", wc.lambda_min);
    println!("tr(W 1/9)            {:+.6}", detect(&w, &DensityMatrix::maximally_mixed(3, 3)).unwrap());
    println!("min over 10^4 products {:+.3e}", product_vector_positivity_check(&w, 10_000, 1));
    let (a, b) = w.weak_optimality_vector();
    println!("<a0,b1*|W|a0,b1*>    {:+.3e}", w.product_value(&a, &b));
    println!("floor of mu0^2 - W   {:+.3e}", hermitian_eigensystem(&w.m_phi).unwrap().min());
}
