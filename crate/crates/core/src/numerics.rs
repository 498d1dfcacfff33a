//! Dense complex linear algebra at desk scale.
//!
//! [`CMatrix`] is a plain row-major matrix of `Complex<f64>`; the Hermitian
//! eigensolver is a cyclic two-sided Jacobi iteration, which is accurate to a
//! few ulps of `‖A‖_F` for the sizes this crate deals with (n ≤ 256).

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};
#[allow(unused_imports)] // inherent float math is only there when std is linked
use num_traits::Float;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

pub type C64 = Complex<f64>;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Checked constructor: the entry count must match and every entry must be finite.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "CMatrix::from_vec",
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = C64::new(d, 0.0);
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(len: usize, columns: &[Vec<C64>]) -> Self {
        let k = columns.len();
        Self::from_fn(len, k, |i, j| columns[j][i])
    }

    /// Rank-one operator `u v*`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.data[i * self.cols + j]).collect()
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        matmul(self, other)
    }

    pub fn adjoint(&self) -> CMatrix {
        adjoint(self)
    }

    pub fn scale(&self, s: C64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> CMatrix {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols))
            .map(|i| self.data[i * self.cols + i])
            .sum()
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `A x`; panics on a length mismatch.
    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, x.len(), "mul_vec: dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `‖A − A*‖_F / ‖A‖_F` (0 for the zero matrix).
    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.data[i * n + j] - self.data[j * n + i].conj()).norm_sqr();
            }
        }
        let norm = self.frob_norm();
        if norm == 0.0 {
            0.0
        } else {
            acc.sqrt() / norm
        }
    }

    /// Kronecker product `A ⊗ B`.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (r2, c2) = (other.rows, other.cols);
        CMatrix::from_fn(self.rows * r2, self.cols * c2, |i, j| {
            self[(i / r2, j / c2)] * other[(i % r2, j % c2)]
        })
    }

    /// `‖A − B‖_F`; panics on shape mismatch.
    pub fn dist(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `‖A B − B A‖_F`.
    pub fn commutator_norm(&self, other: &CMatrix) -> f64 {
        (self * other).dist(&(other * self))
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    /// Panics on a shape mismatch; use [`matmul`] for a checked product.
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        matmul(self, rhs).expect("matrix product: dimension mismatch")
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

pub fn matmul(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            op: "matmul",
            expected: a.cols,
            found: b.rows,
        });
    }
    let (n, m) = (a.rows, b.cols);
    let mut out = vec![ZERO; n * m];
    for i in 0..n {
        let out_row = &mut out[i * m..(i + 1) * m];
        for k in 0..a.cols {
            let aik = a.data[i * a.cols + k];
            if aik.is_zero() {
                continue;
            }
            let b_row = &b.data[k * m..(k + 1) * m];
            for (o, &bkj) in out_row.iter_mut().zip(b_row) {
                *o += aik * bkj;
            }
        }
    }
    Ok(CMatrix {
        rows: n,
        cols: m,
        data: out,
    })
}

pub fn adjoint(a: &CMatrix) -> CMatrix {
    CMatrix::from_fn(a.cols, a.rows, |i, j| a[(j, i)].conj())
}

/// Frobenius inner product `Σ a[i,j]·conj(b[i,j])`.
pub fn frob_inner(a: &CMatrix, b: &CMatrix) -> Result<C64> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(Error::DimensionMismatch {
            op: "frob_inner",
            expected: a.rows * a.cols,
            found: b.rows * b.cols,
        });
    }
    Ok(a.data.iter().zip(&b.data).map(|(x, y)| x * y.conj()).sum())
}

/// `⟨x, y⟩ = Σ x_i·conj(y_i)`.
pub fn inner(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_dist(x: &[C64], y: &[C64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal basis of `span(vectors)` by twice-iterated modified Gram-Schmidt.
///
/// A vector is dropped when what survives orthogonalization has norm at most
/// `cutoff` times the largest input norm.
pub fn orthonormalize(vectors: &[Vec<C64>], cutoff: f64) -> Vec<Vec<C64>> {
    let scale = vectors.iter().map(|v| norm(v)).fold(0.0, f64::max);
    let mut basis: Vec<Vec<C64>> = Vec::new();
    if scale == 0.0 {
        return basis;
    }
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = inner(&w, b);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let n = norm(&w);
        if n > cutoff * scale {
            w.iter_mut().for_each(|z| *z /= n);
            basis.push(w);
        }
    }
    basis
}

/// Eigendecomposition `A = Q Λ Q*` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermEig {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: CMatrix,
}

impl HermEig {
    pub fn reconstruct(&self) -> CMatrix {
        self.map_spectrum(|x| x)
    }

    /// `Q f(Λ) Q*`.
    pub fn map_spectrum(&self, mut f: impl FnMut(f64) -> f64) -> CMatrix {
        let q = &self.eigenvectors;
        let n = q.rows;
        let k = q.cols;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        CMatrix::from_fn(n, n, |i, j| (0..k).map(|m| q[(i, m)] * q[(j, m)].conj() * fl[m]).sum())
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Eigenvectors (as columns of a new matrix) whose eigenvalues exceed `threshold`.
    pub fn eigenvectors_above(&self, threshold: f64) -> CMatrix {
        let keep: Vec<usize> = (0..self.eigenvalues.len())
            .filter(|&k| self.eigenvalues[k] > threshold)
            .collect();
        let q = &self.eigenvectors;
        CMatrix::from_fn(q.rows, keep.len(), |i, j| q[(i, keep[j])])
    }
}

const JACOBI_MAX_SWEEPS: usize = 64;

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
pub fn eig_hermitian(a: &CMatrix) -> Result<HermEig> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            op: "eig_hermitian",
            expected: a.rows,
            found: a.cols,
        });
    }
    let herm = a.hermitian_residual();
    if herm > DEFAULT_TOL {
        return Err(Error::NotHermitian(herm));
    }
    let n = a.rows;
    // Work on the exactly Hermitian part.
    let mut m = CMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    for i in 0..n {
        m[(i, i)].im = 0.0;
    }
    let mut q = CMatrix::identity(n);
    let scale = m.frob_norm();
    let target = f64::EPSILON * scale;
    let mut previous = f64::INFINITY;

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        // Converged, or stalled at roundoff level.
        if off <= target || (off <= 1e3 * target && off >= previous) {
            break;
        }
        previous = off;
        for p in 0..n {
            for r in p + 1..n {
                rotate(&mut m, &mut q, p, r);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| m[(i, i)].re).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |i, j| q[(i, order[j])]);
    Ok(HermEig {
        eigenvalues,
        eigenvectors,
    })
}

/// One Jacobi step annihilating `m[p, r]`, accumulated into `q`.
fn rotate(m: &mut CMatrix, q: &mut CMatrix, p: usize, r: usize) {
    let n = m.rows;
    let apr = m[(p, r)];
    let g = apr.norm();
    if g < f64::MIN_POSITIVE {
        return;
    }
    let app = m[(p, p)].re;
    let arr = m[(r, r)].re;
    let phase = apr / g;
    let tau = (arr - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // V = diag(1, conj(phase)) · [[c, s], [-s, c]] restricted to (p, r).
    let vpp = C64::new(c, 0.0);
    let vpr = C64::new(s, 0.0);
    let vrp = -phase.conj() * s;
    let vrr = phase.conj() * c;

    // m ← m V
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkr = m[(k, r)];
        m[(k, p)] = mkp * vpp + mkr * vrp;
        m[(k, r)] = mkp * vpr + mkr * vrr;
    }
    // m ← V* m
    for k in 0..n {
        let mpk = m[(p, k)];
        let mrk = m[(r, k)];
        m[(p, k)] = vpp.conj() * mpk + vrp.conj() * mrk;
        m[(r, k)] = vpr.conj() * mpk + vrr.conj() * mrk;
    }
    m[(p, r)] = ZERO;
    m[(r, p)] = ZERO;
    m[(p, p)].im = 0.0;
    m[(r, r)].im = 0.0;
    // q ← q V
    for k in 0..n {
        let qkp = q[(k, p)];
        let qkr = q[(k, r)];
        q[(k, p)] = qkp * vpp + qkr * vrp;
        q[(k, r)] = qkp * vpr + qkr * vrr;
    }
}

fn checked_spectrum(a: &CMatrix, floor: f64) -> Result<HermEig> {
    let eig = eig_hermitian(a)?;
    let (min, max) = (eig.min(), eig.max());
    if !(max > 0.0) || min <= floor * max {
        return Err(Error::NotInvertible { min, max });
    }
    Ok(eig)
}

/// Inverse of a strictly positive Hermitian matrix.
///
/// Fails with [`Error::NotInvertible`] when `λ_min ≤ floor·λ_max`.
pub fn inv_psd(a: &CMatrix, floor: f64) -> Result<CMatrix> {
    Ok(checked_spectrum(a, floor)?.map_spectrum(|x| 1.0 / x))
}

/// Positive inverse square root `A^{-1/2}` of a strictly positive Hermitian matrix.
pub fn inv_sqrt_psd(a: &CMatrix, floor: f64) -> Result<CMatrix> {
    Ok(checked_spectrum(a, floor)?.map_spectrum(|x| 1.0 / x.sqrt()))
}
