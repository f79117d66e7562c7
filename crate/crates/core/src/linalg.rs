//! Small dense complex linear algebra.
//!
//! Everything here is sized for two-qudit problems (dimension at most 81), so
//! matrices are plain row-major `Vec<C64>` buffers and algorithms favour
//! determinism over asymptotic speed.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Tolerance on `max |H - H^dagger|` accepted by [`hermitian_eigensystem`].
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this
/// fraction of the full Frobenius norm.
pub const JACOBI_REL_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// A Schmidt coefficient counts as nonzero iff it exceeds this fraction of the
/// largest one.
pub const RANK_REL_TOL: f64 = 1e-9;

#[cfg(test)]
pub(crate) fn c(re: f64, im: f64) -> C64 { C64::new(re, im) }

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

/// Dense complex column vector.
#[derive(Clone, Debug, PartialEq)]
pub struct CVector {
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn<F>(rows: usize, cols: usize, mut f: F) -> Self
    where F: FnMut(usize, usize) -> C64
    {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Build from row-major entries; fails if the length is not `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix", data.len(), rows, cols)));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    /// `|v><w|`
    pub fn outer(v: &CVector, w: &CVector) -> Self {
        Self::from_fn(v.dim(), w.dim(), |i, j| v[i] * w[j].conj())
    }

    pub fn rows(&self) -> usize { self.rows }
    pub fn cols(&self) -> usize { self.cols }
    pub fn is_square(&self) -> bool { self.rows == self.cols }
    pub fn as_slice(&self) -> &[C64] { &self.data }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> CVector {
        CVector::from_fn(self.rows, |i| self[(i, j)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self { self.scale(C64::new(s, 0.0)) }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    /// `self += s * other`
    pub fn add_scaled_assign(&mut self, s: C64, other: &Self) -> Result<()> {
        self.check_same_shape(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `A B A^dagger`
    pub fn conjugate_by(&self, a: &Self) -> Result<Self> {
        a.matmul(self)?.matmul(&a.adjoint())
    }

    pub fn apply(&self, v: &CVector) -> Result<CVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to vector of dim {}", self.rows, self.cols, v.dim())));
        }
        Ok(CVector::from_fn(self.rows, |i| {
            self.row(i).iter().zip(v.as_slice()).map(|(a, b)| a * b).sum()
        }))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`; `INFINITY` on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `max |H - H^dagger|`; `INFINITY` for non-square input.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `max |M^dagger M - I|`
    pub fn unitarity_defect(&self) -> f64 {
        match self.adjoint().matmul(self) {
            Ok(p) => p.max_abs_diff(&Self::identity(self.cols)),
            Err(_) => f64::INFINITY,
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 { &self.data[i * self.cols + j] }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 { &mut self.data[i * self.cols + j] }
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter()
                .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl CVector {
    pub fn zeros(dim: usize) -> Self { Self { data: vec![C64::new(0.0, 0.0); dim] } }

    pub fn from_vec(data: Vec<C64>) -> Self { Self { data } }

    pub fn from_fn<F: FnMut(usize) -> C64>(dim: usize, f: F) -> Self {
        Self { data: (0..dim).map(f).collect() }
    }

    /// Computational basis vector `|i>`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.data[i] = C64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize { self.data.len() }
    pub fn as_slice(&self) -> &[C64] { &self.data }
    pub fn into_vec(self) -> Vec<C64> { self.data }
    pub fn iter(&self) -> std::slice::Iter<'_, C64> { self.data.iter() }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Normalized copy; `ZeroVector` if the norm vanishes.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale_real(1.0 / n))
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn conj(&self) -> Self { Self { data: self.data.iter().map(|z| z.conj()).collect() } }

    pub fn scale(&self, s: C64) -> Self { Self { data: self.data.iter().map(|z| z * s).collect() } }

    pub fn scale_real(&self, s: f64) -> Self { self.scale(C64::new(s, 0.0)) }

    pub fn add(&self, other: &Self) -> Self {
        Self { data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    /// `self ⊗ other` with `self` as the slow index.
    pub fn kron(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        Self { data }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 { self.data.iter().map(|z| z.norm()).fold(0.0, f64::max) }

    /// Rotate the global phase so that the first entry of largest modulus is
    /// real and positive.
    pub fn with_canonical_phase(&self) -> Self {
        let mut best = 0;
        let mut best_abs = -1.0;
        for (i, z) in self.data.iter().enumerate() {
            let a = z.norm();
            if a > best_abs {
                best_abs = a;
                best = i;
            }
        }
        if best_abs <= 0.0 {
            return self.clone();
        }
        let phase = self.data[best] / best_abs;
        self.scale(phase.conj())
    }
}

impl Index<usize> for CVector {
    type Output = C64;
    #[inline]
    fn index(&self, i: usize) -> &C64 { &self.data[i] }
}

impl IndexMut<usize> for CVector {
    #[inline]
    fn index_mut(&mut self, i: usize) -> &mut C64 { &mut self.data[i] }
}

/// Kronecker product, `(A⊗B)[(i·rB+k),(j·cB+l)] = A[i,j]·B[k,l]`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = CMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Transpose on the second tensor factor:
/// `out[(a,b),(a',b')] = M[(a,b'),(a',b)]`.
pub fn partial_transpose(m: &CMatrix, d_a: usize, d_b: usize) -> Result<CMatrix> {
    let n = d_a * d_b;
    if m.rows != n || m.cols != n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix is not ({}*{}) square", m.rows, m.cols, d_a, d_b)));
    }
    let mut out = CMatrix::zeros(n, n);
    for a in 0..d_a {
        for b in 0..d_b {
            for a2 in 0..d_a {
                for b2 in 0..d_b {
                    out[(a * d_b + b, a2 * d_b + b2)] = m[(a * d_b + b2, a2 * d_b + b)];
                }
            }
        }
    }
    Ok(out)
}

/// `<v|M|v>`
pub fn expectation(m: &CMatrix, v: &CVector) -> Result<C64> {
    if !m.is_square() || m.rows != v.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator against vector of dim {}", m.rows, m.cols, v.dim())));
    }
    Ok(v.inner(&m.apply(v)?))
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
///
/// Vectors inside a degenerate cluster form an arbitrary orthonormal basis of
/// the eigenspace.
#[derive(Clone, Debug)]
pub struct HermitianEigensystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<CVector>,
}

impl HermitianEigensystem {
    pub fn min(&self) -> f64 { self.eigenvalues[0] }

    pub fn max(&self) -> f64 { *self.eigenvalues.last().unwrap() }

    /// `Σ λ_i |v_i><v_i|`
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.eigenvalues.len();
        let mut out = CMatrix::zeros(n, n);
        for (lam, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            out.add_scaled_assign(C64::new(*lam, 0.0), &CMatrix::outer(v, v))
                .expect("eigenvectors share the matrix dimension");
        }
        out
    }

    /// Number of eigenvalues within `tol` of the smallest one.
    pub fn min_multiplicity(&self, tol: f64) -> usize {
        let lo = self.min();
        self.eigenvalues.iter().take_while(|&&x| x - lo <= tol).count()
    }
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
pub fn hermitian_eigensystem(h: &CMatrix) -> Result<HermitianEigensystem> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} is not square", h.rows, h.cols)));
    }
    let defect = h.hermiticity_defect();
    if !(defect <= HERMITICITY_TOL) {
        return Err(Error::NotHermitian(defect));
    }
    let n = h.rows;
    // work on the exactly Hermitian part
    let mut a = CMatrix::from_fn(n, n, |i, j| {
        if i == j { C64::new(h[(i, i)].re, 0.0) } else { (h[(i, j)] + h[(j, i)].conj()) * 0.5 }
    });
    let mut v = CMatrix::identity(n);
    let total = a.frobenius_norm();

    let mut converged = false;
    for _sweep in 0..=JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= JACOBI_REL_TOL * total {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = order.iter().map(|&i| v.column(i).with_canonical_phase()).collect();
    Ok(HermitianEigensystem { eigenvalues, eigenvectors })
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilate `a[p,q]` with `a <- J^dagger a J`, `v <- v J`.
///
/// `J = diag(1, e^{-iθ}) R` where θ is the phase of `a[p,q]` and `R` is the
/// real rotation that diagonalizes the resulting real symmetric 2x2 block.
fn jacobi_rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / g; // e^{iθ}
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;

    let e = phase.conj(); // e^{-iθ}
    let j_pp = C64::new(cs, 0.0);
    let j_pq = C64::new(sn, 0.0);
    let j_qp = e * (-sn);
    let j_qq = e * cs;

    let n = a.rows;
    // columns
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
    // rows
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(app - t * g, 0.0);
    a[(q, q)] = C64::new(aqq + t * g, 0.0);
}

/// Schmidt form `v = Σ μ_i |a_i>⊗|b_i>` of a bipartite vector.
#[derive(Clone, Debug)]
pub struct SchmidtDecomposition {
    /// Nonzero coefficients, descending.
    pub coefficients: Vec<f64>,
    pub left: Vec<CVector>,
    pub right: Vec<CVector>,
    pub rank: usize,
    /// All `min(d_A, d_B)` singular values of the coefficient matrix,
    /// descending, including the ones below the rank tolerance.
    pub singular_values: Vec<f64>,
}

impl SchmidtDecomposition {
    pub fn reconstruct(&self) -> CVector {
        let dim = self.left[0].dim() * self.right[0].dim();
        let mut out = CVector::zeros(dim);
        for ((mu, a), b) in self.coefficients.iter().zip(&self.left).zip(&self.right) {
            out = out.add(&a.kron(b).scale_real(*mu));
        }
        out
    }
}

/// Schmidt decomposition through the eigensystem of the `d_A × d_A` Gram
/// matrix `X X^dagger` of the coefficient matrix `X[a][b] = v[a·d_B + b]`.
///
/// The Gram eigenvectors fix the left vectors; each coefficient is then taken
/// as the norm of `X^T conj(a_i)`, which keeps small coefficients accurate to
/// machine precision instead of the square root of it.
pub fn schmidt_decompose(v: &CVector, d_a: usize, d_b: usize) -> Result<SchmidtDecomposition> {
    if v.dim() != d_a * d_b {
        return Err(Error::DimensionMismatch(format!(
            "vector of dim {} is not {}*{}", v.dim(), d_a, d_b)));
    }
    if v.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let x = CMatrix::from_fn(d_a, d_b, |a, b| v[a * d_b + b]);
    let gram = x.matmul(&x.adjoint())?;
    let eig = hermitian_eigensystem(&gram)?;
    let xt = x.transpose();

    let mut terms: Vec<(f64, CVector, CVector)> = eig.eigenvectors.iter().rev()
        .map(|a| {
            let w = xt.apply(&a.conj()).expect("shapes agree");
            (w.norm(), a.clone(), w)
        })
        .collect();
    terms.sort_by(|s, t| t.0.total_cmp(&s.0));
    terms.truncate(d_a.min(d_b));

    let singular_values: Vec<f64> = terms.iter().map(|t| t.0).collect();
    let cutoff = RANK_REL_TOL * singular_values[0];
    let mut coefficients = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (mu, a, w) in terms {
        if mu > cutoff {
            right.push(w.scale_real(1.0 / mu));
            left.push(a);
            coefficients.push(mu);
        }
    }
    let rank = coefficients.len();
    Ok(SchmidtDecomposition { coefficients, left, right, rank, singular_values })
}
