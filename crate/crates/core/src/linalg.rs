// Copyright 2026 The weylsim Authors
// SPDX-License-Identifier: Apache-2.0

//! Fixed-size complex matrices: 2×2 operators on the qubit and 4×4
//! superoperators on row-major vectorized density matrices.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Dense 2×2 complex matrix, `m[row][col]`, rows and columns ordered `(e, g)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2(pub [[C64; 2]; 2]);

pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);
pub const SIGMA_X: Mat2 = Mat2([[ZERO, ONE], [ONE, ZERO]]);
pub const SIGMA_Y: Mat2 = Mat2([[ZERO, C64::new(0.0, -1.0)], [I, ZERO]]);
pub const SIGMA_Z: Mat2 = Mat2([[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]]);
/// `σ₊ = (σ_x + iσ_y)/2 = |e⟩⟨g|`.
pub const SIGMA_PLUS: Mat2 = Mat2([[ZERO, ONE], [ZERO, ZERO]]);
/// `σ₋ = (σ_x − iσ_y)/2 = |g⟩⟨e|`.
pub const SIGMA_MINUS: Mat2 = Mat2([[ZERO, ZERO], [ONE, ZERO]]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[ZERO, ZERO], [ZERO, ZERO]]);

    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[row][col]
    }

    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, s: C64) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Mat2) -> Mat2 {
        *self * *other - *other * *self
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    /// Largest entrywise deviation from Hermiticity, `max |A − A†|`.
    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    /// Row-major flattening `(m_ee, m_eg, m_ge, m_gg)`.
    pub fn to_vec(&self) -> [C64; 4] {
        [self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1]]
    }

    pub fn from_vec(v: &[C64; 4]) -> Self {
        Mat2([[v[0], v[1]], [v[2], v[3]]])
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let b = 0.5 * (self.0[0][1] + self.0[1][0].conj());
        let mean = 0.5 * (a + d);
        let half_diff = 0.5 * (a - d);
        let r = half_diff.hypot(b.norm());
        [mean - r, mean + r]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([[a[0][0] - b[0][0], a[0][1] - b[0][1]], [a[1][0] - b[1][0], a[1][1] - b[1][1]]])
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale_re(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ])
    }
}

/// Dense 4×4 complex matrix, `m[row][col]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

impl Mat4 {
    pub const ZERO: Mat4 = Mat4([[ZERO; 4]; 4]);

    /// Kronecker product `A ⊗ B`. With row-major vectorization,
    /// `vec(A X B) = (A ⊗ Bᵀ) vec(X)`.
    pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
        let mut out = Mat4::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[C64; 4]) -> [C64; 4] {
        let mut out = [ZERO; 4];
        for (row, o) in self.0.iter().zip(out.iter_mut()) {
            *o = row.iter().zip(v).map(|(a, x)| a * x).sum();
        }
        out
    }

    pub fn scale(&self, s: C64) -> Mat4 {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|z| *z *= s);
        out
    }
}

impl Add for Mat4 {
    type Output = Mat4;
    fn add(mut self, rhs: Mat4) -> Mat4 {
        for (a, b) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *a += b;
        }
        self
    }
}

impl Sub for Mat4 {
    type Output = Mat4;
    fn sub(self, rhs: Mat4) -> Mat4 {
        self + rhs.scale(C64::new(-1.0, 0.0))
    }
}

/// Singular value decomposition `A = U Σ V†` of a 4×4 complex matrix.
/// Only `Σ` and `V` are kept.
#[derive(Clone, Copy, Debug)]
pub struct Svd4 {
    /// Singular values, descending.
    pub singular_values: [f64; 4],
    /// Right singular vectors; `right_vectors[j]` pairs with `singular_values[j]`.
    pub right_vectors: [[C64; 4]; 4],
}

const JACOBI_MAX_SWEEPS: usize = 64;

/// One-sided (Hestenes) Jacobi SVD.
///
/// Column pairs of `A V` are rotated until mutually orthogonal; the column
/// norms are then the singular values and the accumulated rotations form `V`.
/// Small singular values come out with high relative accuracy, which is what
/// the null-space extraction relies on.
pub fn svd4(a: &Mat4) -> Svd4 {
    // cols[j][i] = A[i][j]; working on columns keeps the inner loops contiguous.
    let mut cols = [[ZERO; 4]; 4];
    for (i, row) in a.0.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            cols[j][i] = x;
        }
    }
    let mut v = [[ZERO; 4]; 4];
    for (j, col) in v.iter_mut().enumerate() {
        col[j] = ONE;
    }

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in (p + 1)..4 {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let g: C64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g_abs = g.norm();
                if g_abs <= f64::EPSILON * (alpha * beta).sqrt() || g_abs == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = (g / g_abs).conj();
                let zeta = (beta - alpha) / (2.0 * g_abs);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut cols, p, q, c, s, phase);
                rotate(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order = [0usize, 1, 2, 3];
    let norms: [f64; 4] = std::array::from_fn(|j| cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt());
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));
    Svd4 { singular_values: order.map(|j| norms[j]), right_vectors: order.map(|j| v[j]) }
}

fn rotate(cols: &mut [[C64; 4]; 4], p: usize, q: usize, c: f64, s: f64, phase: C64) {
    let (cp, cq) = (cols[p], cols[q]);
    for (i, (&x, &y)) in cp.iter().zip(&cq).enumerate() {
        let y = y * phase;
        cols[p][i] = x * c - y * s;
        cols[q][i] = x * s + y * c;
    }
}
