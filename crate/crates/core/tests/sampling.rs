use qutrit_distill::simplex::{classify, sample_npt_with, sample_simplex_with, trial_rng, PtClass};
use qutrit_distill::Dimension;

#[test]
fn simplex_mean_is_uniform() {
    let dim = Dimension::new(3).unwrap();
    let n = 100_000;
    let mut rng = trial_rng(17, 0);
    let mut sum = [0.0f64; 9];
    for _ in 0..n {
        for (acc, c) in sum.iter_mut().zip(sample_simplex_with(&dim, &mut rng).as_slice()) {
            *acc += c;
        }
    }
    // flat Dirichlet on 9 coordinates: Var = (1/9)(8/9)/10
    let se = ((8.0 / 810.0) / n as f64).sqrt();
    for (k, acc) in sum.iter().enumerate() {
        let mean = acc / n as f64;
        assert!((mean - 1.0 / 9.0).abs() < 3.0 * se, "coordinate {k}: mean {mean}");
    }
}

#[test]
fn accepted_npt_samples_have_three_negative_eigenvalues() {
    let dim = Dimension::new(3).unwrap();
    let mut rng = trial_rng(23, 0);
    for i in 0..10_000 {
        let s = sample_npt_with(&dim, &mut rng, 10_000).unwrap();
        let spec = classify(&s);
        assert_eq!(spec.classification, PtClass::Npt);
        assert_eq!(spec.negative_count, 3, "sample {i}");
    }
}
