//! Weyl–Heisenberg operators, Bell basis and the structural unitaries of the
//! two-qudit space.
//!
//! Index conventions: `|a,b> = |a>⊗|b>` sits at position `a·d + b`; all Weyl
//! indices are taken modulo `d`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{kron, CMatrix, CVector};

/// Local dimension `d ≥ 2` together with its table of powers of
/// `ω = e^{2πi/d}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dimension {
    d: usize,
    roots: Vec<C64>,
}

impl Dimension {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::OutOfRange(format!("dimension must be at least 2, got {d}")));
        }
        let roots = (0..d)
            .map(|j| {
                let ang = 2.0 * PI * j as f64 / d as f64;
                C64::new(ang.cos(), ang.sin())
            })
            .collect();
        Ok(Self { d, roots })
    }

    #[inline]
    pub fn get(&self) -> usize { self.d }

    /// `ω^n` by folding the exponent modulo `d`.
    #[inline]
    pub fn omega_pow(&self, n: i64) -> C64 {
        self.roots[n.rem_euclid(self.d as i64) as usize]
    }

    #[inline]
    pub fn wrap(&self, x: i64) -> usize { x.rem_euclid(self.d as i64) as usize }
}

/// Pair `(k, l)` in `Z_d × Z_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeylIndex {
    pub k: usize,
    pub l: usize,
}

impl WeylIndex {
    /// Reduces both entries modulo `d`.
    pub fn new(dim: &Dimension, k: i64, l: i64) -> Self {
        Self { k: dim.wrap(k), l: dim.wrap(l) }
    }

    /// All `d²` indices in row-major `(k, l)` order.
    pub fn all(dim: &Dimension) -> impl Iterator<Item = WeylIndex> {
        let d = dim.get();
        (0..d).flat_map(move |k| (0..d).map(move |l| WeylIndex { k, l }))
    }
}

/// `W_{k,l} = Σ_j ω^{jk} |j><j+l|`
pub fn weyl(dim: &Dimension, idx: WeylIndex) -> CMatrix {
    let d = dim.get();
    let mut m = CMatrix::zeros(d, d);
    for j in 0..d {
        m[(j, (j + idx.l) % d)] = dim.omega_pow((j * idx.k) as i64);
    }
    m
}

/// `|Ω_{k,l}> = (W_{k,l}⊗1)|Ω_{0,0}>`, with `|Ω_{0,0}> = Σ_i |i,i>/√d`.
pub fn bell_vector(dim: &Dimension, idx: WeylIndex) -> CVector {
    let d = dim.get();
    let amp = 1.0 / (d as f64).sqrt();
    let mut v = CVector::zeros(d * d);
    // W|i> = ω^{(i-l)k} |i-l>
    for i in 0..d {
        let row = dim.wrap(i as i64 - idx.l as i64);
        v[row * d + i] = dim.omega_pow((row * idx.k) as i64) * amp;
    }
    v
}

/// Discrete Fourier transform `F[x,y] = ω^{-xy}/√d`.
pub fn fourier(dim: &Dimension) -> CMatrix {
    let d = dim.get();
    let s = 1.0 / (d as f64).sqrt();
    CMatrix::from_fn(d, d, |x, y| dim.omega_pow(-((x * y) as i64)) * s)
}

/// Controlled sum `C_s = Σ_z |z><z| ⊗ W_{0,z}`, so `C_s|i,j> = |i,j-i>`.
pub fn controlled_sum(dim: &Dimension) -> CMatrix {
    let d = dim.get();
    let mut m = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m[(i * d + dim.wrap(j as i64 - i as i64), i * d + j)] = C64::new(1.0, 0.0);
        }
    }
    m
}

/// Bell unitary `U = Σ_{r,s} |r,s><Ω_{r,s}|`.
pub fn bell_unitary(dim: &Dimension) -> CMatrix {
    let d = dim.get();
    let mut u = CMatrix::zeros(d * d, d * d);
    for idx in WeylIndex::all(dim) {
        let omega = bell_vector(dim, idx);
        let row = idx.k * d + idx.l;
        for (col, z) in omega.iter().enumerate() {
            u[(row, col)] = z.conj();
        }
    }
    u
}

/// `(F ⊗ 1) C_s`, the factored form of [`bell_unitary`].
pub fn bell_unitary_factored(dim: &Dimension) -> CMatrix {
    kron(&fourier(dim), &CMatrix::identity(dim.get()))
        .matmul(&controlled_sum(dim))
        .expect("square factors of equal size")
}

/// Flip (swap) operator `𝔽|a,b> = |b,a>`.
pub fn flip(dim: &Dimension) -> CMatrix {
    let d = dim.get();
    let mut m = CMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            m[(b * d + a, a * d + b)] = C64::new(1.0, 0.0);
        }
    }
    m
}
