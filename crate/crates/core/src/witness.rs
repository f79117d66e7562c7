//! Schmidt-rank-2 eigenvector of `ρ^Γ` at its smallest eigenvalue, and the
//! one-copy distillability witness built from it.
//!
//! Construction for a Bell-diagonal qutrit state with `λ_min(ρ^Γ) < 0`:
//!
//! 1. `u_0` is the lowest eigenvector of the block `B_0`; the other two are
//!    generated as `u_2 = W_{1,0} u_0` and `u_1 = W_{1,0} u_2`, which keeps the
//!    three eigenvectors phase-coherent.
//! 2. `α^(m) = F^dagger u_m`.
//! 3. With `ψ = (1/√2, 0, -1/√2)` the vector
//!    `φ̃ = Σ_{i,k} ψ_i α^(i)_k |k, k+i>` has a rank-2 coefficient matrix `C`.
//! 4. `φ = (F^dagger ⊗ F) 𝔽 φ̃` is an eigenvector of `ρ^Γ` with the same
//!    Schmidt coefficients as `φ̃`.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigensystem, kron, partial_transpose, schmidt_decompose, CMatrix, CVector,
    SchmidtDecomposition,
};
use crate::simplex::{classify, pt_block, trial_rng, DensityMatrix, PtClass, PtSpectrum, SimplexCoefficients};
use crate::weyl::{flip, fourier, weyl, Dimension, WeylIndex};

/// At least one principal 2x2 minor of `C` must exceed this.
pub const MINOR_TOL: f64 = 1e-9;
/// Largest imaginary part [`detect`] will silently drop.
pub const DETECT_IMAG_TOL: f64 = 1e-11;

/// Every intermediate of the eigenvector construction.
#[derive(Clone, Debug)]
pub struct WitnessConstruction {
    pub lambda_min: f64,
    pub pt_spectrum: PtSpectrum,
    /// `u_0, u_1, u_2`
    pub u: [CVector; 3],
    /// `α^(m) = F^dagger u_m`
    pub alpha: [CVector; 3],
    pub psi: [C64; 3],
    /// Coefficient matrix of `φ̃`, `φ̃ = Σ C_{i,j} |i,j>`.
    pub c: CMatrix,
    /// Principal minors; `minors[j]` drops row and column `j`.
    pub minors: [C64; 3],
    pub det_c: C64,
    pub phi_tilde: CVector,
    pub phi: CVector,
    pub schmidt: SchmidtDecomposition,
}

impl WitnessConstruction {
    pub fn mu0(&self) -> f64 { self.schmidt.coefficients[0] }
    pub fn mu1(&self) -> f64 { self.schmidt.coefficients[1] }

    pub fn max_minor(&self) -> f64 {
        self.minors.iter().map(|m| m.norm()).fold(0.0, f64::max)
    }
}

fn det2(a: C64, b: C64, c: C64, d: C64) -> C64 { a * d - b * c }

fn det3(m: &CMatrix) -> C64 {
    m[(0, 0)] * det2(m[(1, 1)], m[(1, 2)], m[(2, 1)], m[(2, 2)])
        - m[(0, 1)] * det2(m[(1, 0)], m[(1, 2)], m[(2, 0)], m[(2, 2)])
        + m[(0, 2)] * det2(m[(1, 0)], m[(1, 1)], m[(2, 0)], m[(2, 1)])
}

fn principal_minor(m: &CMatrix, drop: usize) -> C64 {
    let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
    let (i, j) = (keep[0], keep[1]);
    det2(m[(i, i)], m[(i, j)], m[(j, i)], m[(j, j)])
}

/// Runs the eigenvector construction on an NPT qutrit table.
pub fn construct_witness_vector(coeffs: &SimplexCoefficients) -> Result<WitnessConstruction> {
    if coeffs.d() != 3 {
        return Err(Error::UnsupportedDimension(coeffs.d()));
    }
    let pt_spectrum = classify(coeffs);
    if pt_spectrum.classification != PtClass::Npt {
        return Err(Error::NotNpt(format!(
            "{} with lambda_min = {:e}", pt_spectrum.classification, pt_spectrum.lambda_min)));
    }
    let dim: &Dimension = coeffs.dim();

    let b0 = pt_block(coeffs, 0)?;
    let eig = hermitian_eigensystem(&b0)?;
    let lambda_min = eig.eigenvalues[0];
    let u0 = eig.eigenvectors[0].clone();
    let z = weyl(dim, WeylIndex { k: 1, l: 0 });
    let u2 = z.apply(&u0)?;
    let u1 = z.apply(&u2)?;
    let u = [u0, u1, u2];

    let f = fourier(dim);
    let f_dag = f.adjoint();
    let alpha = [f_dag.apply(&u[0])?, f_dag.apply(&u[1])?, f_dag.apply(&u[2])?];

    let h = 0.5f64.sqrt();
    let psi = [C64::new(h, 0.0), C64::new(0.0, 0.0), C64::new(-h, 0.0)];

    let mut c = CMatrix::zeros(3, 3);
    for (i, (p, a)) in psi.iter().zip(&alpha).enumerate() {
        for k in 0..3 {
            c[(k, (k + i) % 3)] += p * a[k];
        }
    }
    let det_c = det3(&c);
    let minors = [principal_minor(&c, 0), principal_minor(&c, 1), principal_minor(&c, 2)];
    let max_minor = minors.iter().map(|m| m.norm()).fold(0.0, f64::max);
    if max_minor <= MINOR_TOL {
        return Err(Error::RankCertification(max_minor));
    }

    let phi_tilde = CVector::from_vec(c.as_slice().to_vec());
    let local = kron(&f_dag, &f).matmul(&flip(dim))?;
    let phi = local.apply(&phi_tilde)?;
    let schmidt = schmidt_decompose(&phi, 3, 3)?;
    if schmidt.rank != 2 {
        return Err(Error::RankCertification(max_minor));
    }

    Ok(WitnessConstruction {
        lambda_min,
        pt_spectrum,
        u,
        alpha,
        psi,
        c,
        minors,
        det_c,
        phi_tilde,
        phi,
        schmidt,
    })
}

/// `W_φ = (|φ><φ|)^Γ` and its mirrored partner `M_φ = μ_0² 1 - W_φ`.
#[derive(Clone, Debug)]
pub struct WitnessOperator {
    pub w_phi: CMatrix,
    pub m_phi: CMatrix,
    pub mu0: f64,
    pub mu1: f64,
    /// Schmidt vectors of `φ`: `a_0, a_1` on A and `b_0, b_1` on B.
    pub a: [CVector; 2],
    pub b: [CVector; 2],
}

impl WitnessOperator {
    /// `{μ_0², μ_1², μ_0μ_1, -μ_0μ_1, 0, 0, 0, 0, 0}` sorted ascending.
    pub fn expected_spectrum(&self) -> Vec<f64> {
        let (m0, m1) = (self.mu0, self.mu1);
        let mut s = vec![m0 * m0, m1 * m1, m0 * m1, -m0 * m1, 0.0, 0.0, 0.0, 0.0, 0.0];
        s.sort_by(f64::total_cmp);
        s
    }

    /// `<a,b|W_φ|a,b>`
    pub fn product_value(&self, a: &CVector, b: &CVector) -> f64 {
        let x = a.kron(b);
        x.inner(&self.w_phi.apply(&x).expect("qutrit product vector")).re
    }

    /// `|a_0, b_1^*>`, the product vector on which `W_φ` vanishes.
    pub fn weak_optimality_vector(&self) -> (CVector, CVector) {
        (self.a[0].clone(), self.b[1].conj())
    }
}

pub fn witness_operator(wc: &WitnessConstruction) -> WitnessOperator {
    let proj = CMatrix::outer(&wc.phi, &wc.phi);
    let w_phi = partial_transpose(&proj, 3, 3).expect("9x9 projector");
    let mu0 = wc.mu0();
    let mu1 = wc.mu1();
    let m_phi = CMatrix::identity(9).scale_real(mu0 * mu0).sub(&w_phi).expect("same shape");
    WitnessOperator {
        w_phi,
        m_phi,
        mu0,
        mu1,
        a: [wc.schmidt.left[0].clone(), wc.schmidt.left[1].clone()],
        b: [wc.schmidt.right[0].clone(), wc.schmidt.right[1].clone()],
    }
}

/// `tr(W_φ ρ)`; a negative value certifies one-copy distillability.
pub fn detect(w: &WitnessOperator, state: &DensityMatrix) -> Result<f64> {
    let m = state.matrix();
    let n = w.w_phi.rows();
    if m.rows() != n {
        return Err(Error::DimensionMismatch(format!("{n}x{n} witness against {}x{} state", m.rows(), m.cols())));
    }
    let mut tr = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            tr += w.w_phi[(i, j)] * m[(j, i)];
        }
    }
    if tr.im.abs() > DETECT_IMAG_TOL {
        return Err(Error::NotReal(tr.im));
    }
    Ok(tr.re)
}

fn random_unit<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    loop {
        let v = CVector::from_fn(dim, |_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
        if let Ok(v) = v.normalized() {
            return v;
        }
    }
}

/// Minimum of `<a,b|W_φ|a,b>` over `trials` Haar-random product vectors.
pub fn product_vector_positivity_check(w: &WitnessOperator, trials: usize, seed: u64) -> f64 {
    let mut rng = trial_rng(seed, 0);
    product_vector_min_with(w, trials, &mut rng)
}

pub fn product_vector_min_with<R: Rng + ?Sized>(w: &WitnessOperator, trials: usize, rng: &mut R) -> f64 {
    (0..trials.max(1))
        .map(|_| {
            let a = random_unit(rng, 3);
            let b = random_unit(rng, 3);
            w.product_value(&a, &b)
        })
        .fold(f64::INFINITY, f64::min)
}
