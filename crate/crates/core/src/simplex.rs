//! Bell-diagonal states of two qudits ("magic simplex"), their partial
//! transpose and its block structure.

use std::fmt;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, partial_transpose, CMatrix, CVector};
use crate::weyl::{bell_unitary, bell_vector, weyl, Dimension, WeylIndex};

/// Strict tolerance on `Σ c_{k,l} = 1` for in-memory tables.
pub const SUM_TOL: f64 = 1e-12;
/// Eigenvalues below `-PT_ZERO_TOL` count as negative; `|λ_min| ≤ PT_ZERO_TOL`
/// is the boundary band.
pub const PT_ZERO_TOL: f64 = 1e-12;
/// Relative (to spectral width) clustering tolerance for multiplicities.
pub const CLUSTER_REL_TOL: f64 = 1e-9;

/// Name of the generator behind every sampler, recorded in reports.
pub const RNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.9), seed_from_u64(seed), stream = trial index";

/// Probability table `c_{k,l}` of a Bell-diagonal state.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexCoefficients {
    dim: Dimension,
    c: Vec<f64>,
}

impl SimplexCoefficients {
    /// Row-major table `c[k·d + l]`; entries non-negative, summing to one
    /// within [`SUM_TOL`].
    pub fn new(dim: Dimension, c: Vec<f64>) -> Result<Self> {
        let d = dim.get();
        if c.len() != d * d {
            return Err(Error::InvalidCoefficients(format!("expected {} entries, got {}", d * d, c.len())));
        }
        validate_entries(&c)?;
        let sum: f64 = c.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidCoefficients(format!("entries sum to {sum}, not 1")));
        }
        Ok(Self { dim, c })
    }

    /// Accepts a `d×d` nested table and renormalizes when the sum is within
    /// `sum_tol` of one. The flag reports whether rescaling happened.
    pub fn from_rows(rows: &[Vec<f64>], sum_tol: f64) -> Result<(Self, bool)> {
        let d = rows.len();
        let dim = Dimension::new(d)
            .map_err(|_| Error::InvalidCoefficients(format!("table has {d} rows, need at least 2")))?;
        if let Some(bad) = rows.iter().find(|r| r.len() != d) {
            return Err(Error::InvalidCoefficients(format!("row of length {} in a {d}x{d} table", bad.len())));
        }
        let c: Vec<f64> = rows.iter().flatten().copied().collect();
        validate_entries(&c)?;
        let sum: f64 = c.iter().sum();
        if (sum - 1.0).abs() > sum_tol {
            return Err(Error::InvalidCoefficients(format!("entries sum to {sum}, outside 1 ± {sum_tol:e}")));
        }
        if sum == 1.0 {
            return Ok((Self { dim, c }, false));
        }
        let c = c.into_iter().map(|x| x / sum).collect();
        Ok((Self::new(dim, c)?, true))
    }

    /// `c_{0,0} = 1`: the maximally entangled state `P_{0,0}`.
    pub fn pure_bell(dim: Dimension) -> Self {
        let mut c = vec![0.0; dim.get() * dim.get()];
        c[0] = 1.0;
        Self { dim, c }
    }

    pub fn uniform(dim: Dimension) -> Self {
        let n = dim.get() * dim.get();
        Self { dim, c: vec![1.0 / n as f64; n] }
    }

    /// `(1-p) P_{0,0} + p·1/d²`, i.e. `c_{0,0} = 1 - (d²-1)p/d²`, others `p/d²`.
    pub fn isotropic(dim: Dimension, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange(format!("noise parameter {p} outside [0, 1]")));
        }
        let n = (dim.get() * dim.get()) as f64;
        let mut c = vec![p / n; dim.get() * dim.get()];
        c[0] = 1.0 - (n - 1.0) * p / n;
        Ok(Self { dim, c })
    }

    pub fn dim(&self) -> &Dimension { &self.dim }
    pub fn d(&self) -> usize { self.dim.get() }
    pub fn as_slice(&self) -> &[f64] { &self.c }

    /// `c_{k,l}` with indices taken modulo `d`.
    #[inline]
    pub fn get(&self, k: i64, l: i64) -> f64 {
        self.c[self.dim.wrap(k) * self.d() + self.dim.wrap(l)]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.c.chunks(self.d()).map(|r| r.to_vec()).collect()
    }
}

fn validate_entries(c: &[f64]) -> Result<()> {
    for (i, &x) in c.iter().enumerate() {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::InvalidCoefficients(format!("entry {i} is {x}")));
        }
    }
    Ok(())
}

impl fmt::Display for SimplexCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:.6}")).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Wire form of a coefficient table: `{"d": 3, "c": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub d: usize,
    pub c: Vec<Vec<f64>>,
}

impl From<&SimplexCoefficients> for CoefficientTable {
    fn from(s: &SimplexCoefficients) -> Self { Self { d: s.d(), c: s.rows() } }
}

/// Density matrix on `C^{d_A} ⊗ C^{d_B}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    d_a: usize,
    d_b: usize,
}

impl DensityMatrix {
    /// Checks shape, Hermiticity (1e-12) and unit trace (1e-10).
    pub fn new(matrix: CMatrix, d_a: usize, d_b: usize) -> Result<Self> {
        let n = d_a * d_b;
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a {d_a}x{d_b} system", matrix.rows(), matrix.cols())));
        }
        let herm = matrix.hermiticity_defect();
        if herm > 1e-12 {
            return Err(Error::NotHermitian(herm));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > 1e-10 {
            return Err(Error::OutOfRange(format!("trace {tr} is not 1")));
        }
        Ok(Self { matrix, d_a, d_b })
    }

    pub fn maximally_mixed(d_a: usize, d_b: usize) -> Self {
        let n = d_a * d_b;
        Self { matrix: CMatrix::identity(n).scale_real(1.0 / n as f64), d_a, d_b }
    }

    pub fn matrix(&self) -> &CMatrix { &self.matrix }
    pub fn d_a(&self) -> usize { self.d_a }
    pub fn d_b(&self) -> usize { self.d_b }
    pub fn total_dim(&self) -> usize { self.d_a * self.d_b }

    pub fn partial_transpose(&self) -> CMatrix {
        partial_transpose(&self.matrix, self.d_a, self.d_b).expect("shape checked at construction")
    }

    pub fn into_matrix(self) -> CMatrix { self.matrix }
}

/// `ρ = Σ c_{k,l} |Ω_{k,l}><Ω_{k,l}|`
pub fn build_state(coeffs: &SimplexCoefficients) -> DensityMatrix {
    let dim = coeffs.dim();
    let d = dim.get();
    let mut rho = CMatrix::zeros(d * d, d * d);
    for idx in WeylIndex::all(dim) {
        let w = coeffs.get(idx.k as i64, idx.l as i64);
        if w == 0.0 {
            continue;
        }
        let v = bell_vector(dim, idx);
        rho.add_scaled_assign(C64::new(w, 0.0), &CMatrix::outer(&v, &v)).expect("same shape");
    }
    DensityMatrix { matrix: rho, d_a: d, d_b: d }
}

/// `(ℰ ⊗ id)(P_{0,0})` with `ℰ(X) = Σ c_{k,l} W_{k,l} X W_{k,l}^dagger`.
pub fn apply_weyl_channel(coeffs: &SimplexCoefficients) -> DensityMatrix {
    let dim = coeffs.dim();
    let d = dim.get();
    let omega = bell_vector(dim, WeylIndex { k: 0, l: 0 });
    let p00 = CMatrix::outer(&omega, &omega);
    let id = CMatrix::identity(d);
    let mut out = CMatrix::zeros(d * d, d * d);
    for idx in WeylIndex::all(dim) {
        let w = coeffs.get(idx.k as i64, idx.l as i64);
        if w == 0.0 {
            continue;
        }
        let kraus = crate::linalg::kron(&weyl(dim, idx), &id);
        let term = p00.conjugate_by(&kraus).expect("square operators");
        out.add_scaled_assign(C64::new(w, 0.0), &term).expect("same shape");
    }
    DensityMatrix { matrix: out, d_a: d, d_b: d }
}

/// Hermitian block `B_m = (1/d) Σ_{k,l,y} ω^{y(k-m)} c_{k,l} |l-y><l+y|`.
pub fn pt_block(coeffs: &SimplexCoefficients, m: usize) -> Result<CMatrix> {
    let dim = coeffs.dim();
    let d = dim.get();
    if m >= d {
        return Err(Error::IndexOutOfRange { index: m, dim: d });
    }
    let mut b = CMatrix::zeros(d, d);
    let inv_d = 1.0 / d as f64;
    for k in 0..d as i64 {
        for l in 0..d as i64 {
            let w = coeffs.get(k, l);
            if w == 0.0 {
                continue;
            }
            for y in 0..d as i64 {
                let phase = dim.omega_pow(y * (k - m as i64));
                b[(dim.wrap(l - y), dim.wrap(l + y))] += phase * (w * inv_d);
            }
        }
    }
    Ok(b)
}

/// `U^dagger (Σ_m |m><m| ⊗ B_m) U`.
pub fn assemble_pt_from_blocks(coeffs: &SimplexCoefficients) -> CMatrix {
    let d = coeffs.d();
    let mut blocks = CMatrix::zeros(d * d, d * d);
    for m in 0..d {
        let b = pt_block(coeffs, m).expect("m < d");
        for i in 0..d {
            for j in 0..d {
                blocks[(m * d + i, m * d + j)] = b[(i, j)];
            }
        }
    }
    let u = bell_unitary(coeffs.dim());
    u.adjoint().matmul(&blocks).and_then(|x| x.matmul(&u)).expect("square operators")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PtClass {
    Npt,
    Ppt,
    Boundary,
}

impl fmt::Display for PtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PtClass::Npt => "NPT",
            PtClass::Ppt => "PPT",
            PtClass::Boundary => "BOUNDARY",
        })
    }
}

/// Spectrum of `ρ^Γ` with the derived PPT/NPT verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PtSpectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub lambda_min: f64,
    /// Eigenvalues below `-PT_ZERO_TOL`.
    pub negative_count: usize,
    /// Size of the cluster at `lambda_min` (tolerance relative to spectral width).
    pub min_multiplicity: usize,
    pub classification: PtClass,
}

impl PtSpectrum {
    pub fn from_eigenvalues(eigenvalues: Vec<f64>) -> Self {
        let lambda_min = eigenvalues[0];
        let width = eigenvalues[eigenvalues.len() - 1] - lambda_min;
        let tol = CLUSTER_REL_TOL * width;
        let min_multiplicity = eigenvalues.iter().take_while(|&&x| x - lambda_min <= tol).count();
        let negative_count = eigenvalues.iter().filter(|&&x| x < -PT_ZERO_TOL).count();
        Self { eigenvalues, lambda_min, negative_count, min_multiplicity, classification: classify_lambda(lambda_min) }
    }
}

pub fn classify_lambda(lambda_min: f64) -> PtClass {
    if lambda_min < -PT_ZERO_TOL {
        PtClass::Npt
    } else if lambda_min > PT_ZERO_TOL {
        PtClass::Ppt
    } else {
        PtClass::Boundary
    }
}

/// Full `ρ^Γ` spectrum of the Bell-diagonal state.
pub fn classify(coeffs: &SimplexCoefficients) -> PtSpectrum {
    let pt = build_state(coeffs).partial_transpose();
    let eig = hermitian_eigensystem(&pt).expect("partial transpose of a Hermitian state is Hermitian");
    PtSpectrum::from_eigenvalues(eig.eigenvalues)
}

/// Generator for trial `stream` of a run seeded with `seed`.
///
/// Every trial of a campaign draws from its own ChaCha stream, so results do
/// not depend on scheduling.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform draw from the probability simplex (flat Dirichlet) via normalized
/// standard exponentials.
pub fn sample_simplex_with<R: Rng + ?Sized>(dim: &Dimension, rng: &mut R) -> SimplexCoefficients {
    let n = dim.get() * dim.get();
    loop {
        let raw: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let sum: f64 = raw.iter().sum();
        if sum > 0.0 {
            let c: Vec<f64> = raw.into_iter().map(|x| x / sum).collect();
            if let Ok(s) = SimplexCoefficients::new(dim.clone(), c) {
                return s;
            }
        }
    }
}

pub fn sample_simplex(dim: &Dimension, seed: u64) -> SimplexCoefficients {
    sample_simplex_with(dim, &mut trial_rng(seed, 0))
}

/// Rejection-sample until [`classify`] reports NPT.
pub fn sample_npt_with<R: Rng + ?Sized>(dim: &Dimension, rng: &mut R, max_tries: usize) -> Result<SimplexCoefficients> {
    if max_tries == 0 {
        return Err(Error::OutOfRange("max_tries must be at least 1".into()));
    }
    for _ in 0..max_tries {
        let s = sample_simplex_with(dim, rng);
        if classify(&s).classification == PtClass::Npt {
            return Ok(s);
        }
    }
    Err(Error::SamplerExhausted(max_tries))
}

pub fn sample_npt(dim: &Dimension, seed: u64, max_tries: usize) -> Result<SimplexCoefficients> {
    sample_npt_with(dim, &mut trial_rng(seed, 0), max_tries)
}

/// The `d²` Bell vectors `|Ω_{k,l}>` in row-major `(k, l)` order.
pub fn bell_basis(dim: &Dimension) -> Vec<CVector> {
    WeylIndex::all(dim).map(|idx| bell_vector(dim, idx)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d3() -> Dimension { Dimension::new(3).unwrap() }

    #[test]
    fn coefficient_validation() {
        assert!(SimplexCoefficients::new(d3(), vec![0.1; 9]).is_err());
        let mut c = vec![0.0; 9];
        c[0] = 1.1;
        c[1] = -0.1;
        assert!(SimplexCoefficients::new(d3(), c).is_err());
        assert!(SimplexCoefficients::new(d3(), vec![1.0; 4]).is_err());
        assert!(SimplexCoefficients::new(d3(), vec![1.0 / 9.0; 9]).is_ok());
    }

    #[test]
    fn lenient_rows_renormalize() {
        let mut rows = vec![vec![0.0; 3]; 3];
        rows[0][0] = 0.9999999999;
        let (s, renorm) = SimplexCoefficients::from_rows(&rows, 1e-9).unwrap();
        assert!(renorm);
        assert_eq!(s.get(0, 0), 1.0);
        rows[0][0] = 0.99;
        assert!(SimplexCoefficients::from_rows(&rows, 1e-9).is_err());
        rows[0][0] = 1.0;
        assert!(!SimplexCoefficients::from_rows(&rows, 1e-9).unwrap().1);
        assert!(SimplexCoefficients::from_rows(&[vec![1.0]], 1e-9).is_err());
        assert!(SimplexCoefficients::from_rows(&[vec![1.0, 0.0], vec![0.0]], 1e-9).is_err());
    }

    #[test]
    fn pure_and_uniform_states() {
        let rho = build_state(&SimplexCoefficients::pure_bell(d3()));
        let o = bell_vector(&d3(), WeylIndex { k: 0, l: 0 });
        assert!(rho.matrix().max_abs_diff(&CMatrix::outer(&o, &o)) < 1e-15);
        let mix = build_state(&SimplexCoefficients::uniform(d3()));
        assert!(mix.matrix().max_abs_diff(DensityMatrix::maximally_mixed(3, 3).matrix()) < 1e-15);
    }

    #[test]
    fn block_b0_of_pure_bell() {
        let b = pt_block(&SimplexCoefficients::pure_bell(d3()), 0).unwrap();
        let t = 1.0 / 3.0;
        let expect = CMatrix::from_fn(3, 3, |i, j| match (i, j) {
            (0, 0) | (1, 2) | (2, 1) => C64::new(t, 0.0),
            _ => C64::new(0.0, 0.0),
        });
        assert!(b.max_abs_diff(&expect) < 1e-15);
        assert!(matches!(pt_block(&SimplexCoefficients::pure_bell(d3()), 3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn uniform_blocks_are_scaled_identity() {
        let u = SimplexCoefficients::uniform(d3());
        for m in 0..3 {
            let b = pt_block(&u, m).unwrap();
            assert!(b.max_abs_diff(&CMatrix::identity(3).scale_real(1.0 / 9.0)) < 1e-15);
        }
    }

    #[test]
    fn classification_examples() {
        let pure = classify(&SimplexCoefficients::pure_bell(d3()));
        assert_eq!(pure.classification, PtClass::Npt);
        assert_eq!(pure.negative_count, 3);
        assert_eq!(pure.min_multiplicity, 3);
        assert!((pure.lambda_min + 1.0 / 3.0).abs() < 1e-14);

        let mixed = classify(&SimplexCoefficients::uniform(d3()));
        assert_eq!(mixed.classification, PtClass::Ppt);
        assert_eq!(mixed.negative_count, 0);
        assert!((mixed.lambda_min - 1.0 / 9.0).abs() < 1e-15);

        let edge = classify(&SimplexCoefficients::isotropic(d3(), 0.75).unwrap());
        assert_eq!(edge.classification, PtClass::Boundary);
    }

    #[test]
    fn lambda_classifier_bands() {
        assert_eq!(classify_lambda(-1e-11), PtClass::Npt);
        assert_eq!(classify_lambda(-1e-13), PtClass::Boundary);
        assert_eq!(classify_lambda(1e-13), PtClass::Boundary);
        assert_eq!(classify_lambda(1e-11), PtClass::Ppt);
    }

    #[test]
    fn samplers_are_deterministic() {
        let a = sample_simplex(&d3(), 7);
        assert_eq!(a, sample_simplex(&d3(), 7));
        assert_ne!(a, sample_simplex(&d3(), 8));
        let n = sample_npt(&d3(), 7, 1000).unwrap();
        assert_eq!(n, sample_npt(&d3(), 7, 1000).unwrap());
        assert_eq!(classify(&n).classification, PtClass::Npt);
        assert!(matches!(sample_npt(&d3(), 7, 0), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn different_streams_differ() {
        let d = d3();
        let a = sample_simplex_with(&d, &mut trial_rng(1, 0));
        let b = sample_simplex_with(&d, &mut trial_rng(1, 1));
        assert_ne!(a, b);
    }
}
