//! Local rank-2 filtering onto an effective qubit pair and the white-noise
//! thresholds for detection and for the filtered state.

use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{expectation, hermitian_eigensystem, kron, partial_transpose, CMatrix, CVector, SchmidtDecomposition};
use crate::simplex::DensityMatrix;
use crate::witness::WitnessConstruction;

/// Filters with `q` at or below this are treated as annihilating the state.
pub const MIN_SUCCESS_PROB: f64 = 1e-12;
/// `|p_σ,max - p_ρ,max|` at or below this is reported as a tie.
pub const TIE_TOL: f64 = 1e-10;

/// `P_A = Σ |a_i><a_i|` and `P_B = Σ |b_i^*><b_i^*|` over the two Schmidt terms.
pub fn filters_from_witness(wc: &WitnessConstruction) -> (CMatrix, CMatrix) {
    let s = &wc.schmidt;
    let mut pa = CMatrix::zeros(3, 3);
    let mut pb = CMatrix::zeros(3, 3);
    for i in 0..2 {
        pa.add_scaled_assign(C64::new(1.0, 0.0), &CMatrix::outer(&s.left[i], &s.left[i])).expect("3x3");
        let bc = s.right[i].conj();
        pb.add_scaled_assign(C64::new(1.0, 0.0), &CMatrix::outer(&bc, &bc)).expect("3x3");
    }
    (pa, pb)
}

/// Filtered two-qubit state, expressed in the ordered basis
/// `(a_0,b_0^*), (a_0,b_1^*), (a_1,b_0^*), (a_1,b_1^*)`.
#[derive(Clone, Debug)]
pub struct FilteredState {
    pub sigma: DensityMatrix,
    pub q: f64,
}

/// `σ = q^{-1} (P_A⊗P_B) ρ (P_A⊗P_B)` with `q = tr((P_A⊗P_B) ρ)`.
pub fn filter_state(rho: &DensityMatrix, pa: &CMatrix, pb: &CMatrix, schmidt: &SchmidtDecomposition) -> Result<FilteredState> {
    if rho.total_dim() != pa.rows() * pb.rows() {
        return Err(Error::DimensionMismatch(format!(
            "state of dim {} against {}x{} filters", rho.total_dim(), pa.rows(), pb.rows())));
    }
    if schmidt.rank < 2 {
        return Err(Error::OutOfRange(format!("filters need two Schmidt terms, got {}", schmidt.rank)));
    }
    let q = kron(pa, pb).matmul(rho.matrix())?.trace().re;
    if !(q > MIN_SUCCESS_PROB) {
        return Err(Error::VanishingFilter(q));
    }
    let basis: Vec<CVector> = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| schmidt.left[i].kron(&schmidt.right[j].conj()))
        .collect();
    let images: Vec<CVector> = basis.iter().map(|e| rho.matrix().apply(e)).collect::<Result<_>>()?;
    let raw = CMatrix::from_fn(4, 4, |r, s| basis[r].inner(&images[s]) / q);
    // exact Hermitian part; the two triangles differ only by rounding
    let sigma = CMatrix::from_fn(4, 4, |r, s| (raw[(r, s)] + raw[(s, r)].conj()) * 0.5);
    Ok(FilteredState { sigma: DensityMatrix::new(sigma, 2, 2)?, q })
}

/// Noise level below which `tr(W_φ ρ_noisy) < 0`:
/// `-d² e / (1 - d² e)` for `e = <φ|ρ^Γ|φ> ∈ [-1/2, 0)`.
pub fn p_rho_max(expectation: f64, d: usize) -> Result<f64> {
    if !(-0.5..0.0).contains(&expectation) {
        return Err(Error::OutOfRange(format!("witness expectation {expectation} outside [-1/2, 0)")));
    }
    let dd = (d * d) as f64;
    Ok(-dd * expectation / (1.0 - dd * expectation))
}

/// Noise level below which the filtered qubit pair stays NPT:
/// `-4λ / (q - 4λ)` for `λ = λ_min(ρ^Γ) < 0`.
pub fn p_sigma_max(lambda_min_rho: f64, q: f64) -> Result<f64> {
    if !(lambda_min_rho < 0.0) {
        return Err(Error::OutOfRange(format!("lambda_min {lambda_min_rho} is not negative")));
    }
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::OutOfRange(format!("success probability {q} outside (0, 1]")));
    }
    Ok(-4.0 * lambda_min_rho / (q - 4.0 * lambda_min_rho))
}

/// `(1-p) ρ + p·1/n`
pub fn add_white_noise(state: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!("noise parameter {p} outside [0, 1]")));
    }
    let n = state.total_dim();
    let mut m = state.matrix().scale_real(1.0 - p);
    m.add_scaled_assign(C64::new(p / n as f64, 0.0), &CMatrix::identity(n))?;
    DensityMatrix::new(m, state.d_a(), state.d_b())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Robustness {
    /// `p_σ,max > p_ρ,max`: the filtered pair tolerates more noise.
    QubitMoreRobust,
    QutritMoreRobust,
    Tie,
}

impl fmt::Display for Robustness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Robustness::QubitMoreRobust => "qubit_more_robust",
            Robustness::QutritMoreRobust => "qutrit_more_robust",
            Robustness::Tie => "tie",
        })
    }
}

#[derive(Clone, Debug)]
pub struct FilterReport {
    pub pa: CMatrix,
    pub pb: CMatrix,
    pub q: f64,
    pub sigma: DensityMatrix,
    /// Ascending spectrum of the 4x4 `σ^Γ`.
    pub sigma_pt_spectrum: Vec<f64>,
    /// `<φ|ρ^Γ|φ>`, the input of `p_rho_max`.
    pub witness_expectation: f64,
    pub p_rho_max: f64,
    pub p_sigma_max: f64,
    pub verdict: Robustness,
}

impl FilterReport {
    pub fn qubit_more_robust(&self) -> bool { self.verdict == Robustness::QubitMoreRobust }
}

/// Filters, filtered state and both thresholds for the state `rho` that
/// produced `wc`.
pub fn filter_report(rho: &DensityMatrix, wc: &WitnessConstruction) -> Result<FilterReport> {
    let d = rho.d_a();
    let (pa, pb) = filters_from_witness(wc);
    let FilteredState { sigma, q } = filter_state(rho, &pa, &pb, &wc.schmidt)?;
    let sigma_pt = partial_transpose(sigma.matrix(), 2, 2)?;
    let sigma_pt_spectrum = hermitian_eigensystem(&sigma_pt)?.eigenvalues;
    let e = expectation(&rho.partial_transpose(), &wc.phi)?.re;
    let p_rho = p_rho_max(e, d)?;
    let p_sigma = p_sigma_max(wc.lambda_min, q)?;
    let verdict = compare_thresholds(p_sigma, p_rho);
    Ok(FilterReport {
        pa,
        pb,
        q,
        sigma,
        sigma_pt_spectrum,
        witness_expectation: e,
        p_rho_max: p_rho,
        p_sigma_max: p_sigma,
        verdict,
    })
}

fn compare_thresholds(p_sigma: f64, p_rho: f64) -> Robustness {
    if (p_sigma - p_rho).abs() <= TIE_TOL {
        Robustness::Tie
    } else if p_sigma > p_rho {
        Robustness::QubitMoreRobust
    } else {
        Robustness::QutritMoreRobust
    }
}

/// Verdict of `p_σ,max` against `p_ρ,max`, with ties inside [`TIE_TOL`].
pub fn robustness_compare(report: &FilterReport) -> Robustness {
    compare_thresholds(report.p_sigma_max, report.p_rho_max)
}

/// The closed-form criterion for the same comparison: `q < 4/d²`.
pub fn qubit_more_robust_by_q(q: f64, d: usize) -> bool {
    q < 4.0 / (d * d) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_rho_max_values() {
        assert!((p_rho_max(-1.0 / 3.0, 3).unwrap() - 0.75).abs() < 1e-15);
        assert!((p_rho_max(-1.0 / 9.0, 3).unwrap() - 0.5).abs() < 1e-15);
        assert!(p_rho_max(-1e-15, 3).unwrap() < 1e-13);
        assert!(p_rho_max(0.0, 3).is_err());
        assert!(p_rho_max(-0.6, 3).is_err());
        assert!(p_rho_max(-0.5, 3).is_ok());
    }

    #[test]
    fn p_sigma_max_values() {
        assert!((p_sigma_max(-1.0 / 3.0, 2.0 / 3.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((p_sigma_max(-1.0 / 3.0, 4.0 / 9.0).unwrap() - 0.75).abs() < 1e-15);
        assert!(p_sigma_max(-0.1, 1e-14).unwrap() > 1.0 - 1e-12);
        assert!(p_sigma_max(0.0, 0.5).is_err());
        assert!(p_sigma_max(-0.1, 0.0).is_err());
        assert!(p_sigma_max(-0.1, 1.5).is_err());
    }

    #[test]
    fn threshold_tie_band() {
        assert_eq!(compare_thresholds(0.75, 0.75 + 5e-11), Robustness::Tie);
        assert_eq!(compare_thresholds(0.76, 0.75), Robustness::QubitMoreRobust);
        assert_eq!(compare_thresholds(2.0 / 3.0, 0.75), Robustness::QutritMoreRobust);
    }

    #[test]
    fn white_noise_endpoints() {
        let rho = DensityMatrix::new(CMatrix::from_real_diag(&[1.0, 0.0, 0.0, 0.0]), 2, 2).unwrap();
        assert_eq!(add_white_noise(&rho, 0.0).unwrap(), rho);
        let mixed = add_white_noise(&rho, 1.0).unwrap();
        assert!(mixed.matrix().max_abs_diff(DensityMatrix::maximally_mixed(2, 2).matrix()) < 1e-16);
        assert!(add_white_noise(&rho, 1.5).is_err());
        assert!(add_white_noise(&rho, -0.1).is_err());
    }
}
