//! Seeded random test objects.
//!
//! Everything is generic over [`rand::Rng`], so callers pick the generator;
//! the CLI and the test suites use ChaCha8 seeded from a `u64`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use crate::frames::InvariantProjection;
use crate::group::{FiniteGroup, GroupVector};
use crate::numerics::{self, CMatrix, C64};
use crate::plancherel::{self, IrrepTable};

/// Entries with real and imaginary parts uniform in `[-1, 1)`.
pub fn vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    (0..n)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let a = matrix(rng, n, n);
    (&a + &a.adjoint()).scale_real(0.5)
}

/// Haar-ish unitary from Gram-Schmidt on random columns.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    loop {
        let cols: Vec<Vec<C64>> = (0..n).map(|_| vector(rng, n)).collect();
        let q = numerics::orthonormalize(&cols, 1e-6);
        if q.len() == n {
            return CMatrix::from_columns(n, &q);
        }
    }
}

/// `U diag(spectrum) U*` for a random unitary `U`.
pub fn psd_with_spectrum<R: Rng + ?Sized>(rng: &mut R, spectrum: &[f64]) -> CMatrix {
    let u = unitary(rng, spectrum.len());
    &(&u * &CMatrix::from_real_diagonal(spectrum)) * &u.adjoint()
}

/// Orthogonal projection onto a random `rank`-dimensional subspace of `C^d`.
pub fn subspace_projection<R: Rng + ?Sized>(rng: &mut R, d: usize, rank: usize) -> CMatrix {
    let u = unitary(rng, d);
    let diag: Vec<f64> = (0..d).map(|i| if i < rank { 1.0 } else { 0.0 }).collect();
    &(&u * &CMatrix::from_real_diagonal(&diag)) * &u.adjoint()
}

pub fn group_vector<R: Rng + ?Sized>(rng: &mut R, group: &Arc<FiniteGroup>) -> GroupVector {
    GroupVector::new(group.clone(), vector(rng, group.order())).expect("length matches order")
}

/// Random left-invariant projection on `ℓ²(G)`: every irrep gets a random
/// multiplicity `0..=d_σ` and a random subspace of that dimension in its
/// multiplicity space.
pub fn invariant_projection<R: Rng + ?Sized>(rng: &mut R, table: &IrrepTable) -> InvariantProjection {
    let fibers: Vec<CMatrix> = table
        .irreps()
        .iter()
        .map(|irrep| {
            let d = irrep.rep.dim();
            let m = rng.gen_range(0..=d);
            subspace_projection(rng, d, m)
        })
        .collect();
    plancherel::projection_from_fibers(table, &fibers).expect("fibers are projections")
}

/// Like [`invariant_projection`], but never the zero projection.
pub fn nonzero_invariant_projection<R: Rng + ?Sized>(rng: &mut R, table: &IrrepTable) -> InvariantProjection {
    loop {
        let p = invariant_projection(rng, table);
        if p.rank() > 0 {
            return p;
        }
    }
}
