//! Commutants `π(G)′` and the traciality criterion for admissible pairs.
//!
//! `T` commutes with every `π(x)` iff `T` is fixed by the averaging map
//! `T ↦ |G|⁻¹ Σ_x π(x) T π(x)*`, which is the orthogonal projection (for the
//! Frobenius inner product) onto `π(G)′`. Its range is therefore exactly the
//! null space of the stacked commutation equations, and we extract an
//! orthonormal basis of that range by Gram-Schmidt over the images of the
//! matrix units.

use alloc::vec::Vec;
#[allow(unused_imports)] // inherent float math is only there when std is linked
use num_traits::Float;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::frames::{self, InvariantProjection, TraceFunctional};
use crate::group::{FiniteGroup, Rep};
use crate::numerics::{self, CMatrix, C64};
use crate::RANK_CUTOFF;

/// Frobenius-orthonormal basis of a commutant, as `d × d` matrices.
#[derive(Debug, Clone)]
pub struct CommutantBasis {
    dim: usize,
    elements: Vec<CMatrix>,
}

impl CommutantBasis {
    /// Orthonormalizes `spanning` (all `d × d`) with rank cutoff [`RANK_CUTOFF`].
    pub fn from_spanning(dim: usize, spanning: &[CMatrix]) -> Result<Self> {
        if let Some(m) = spanning.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch {
                op: "CommutantBasis::from_spanning",
                expected: dim,
                found: m.rows(),
            });
        }
        let flat: Vec<Vec<C64>> = spanning.iter().map(|m| m.as_slice().to_vec()).collect();
        let elements = numerics::orthonormalize(&flat, RANK_CUTOFF)
            .into_iter()
            .map(|v| CMatrix::from_vec(dim, dim, v).expect("shape preserved"))
            .collect();
        Ok(CommutantBasis { dim, elements })
    }

    /// Size of the matrices (the representation dimension).
    pub fn matrix_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the commutant.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    /// Orthogonal projection of `t` onto the span.
    pub fn project(&self, t: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for e in &self.elements {
            let c = numerics::frob_inner(t, e).expect("same shape");
            out = &out + &e.scale(c);
        }
        out
    }

    /// `‖t − proj(t)‖_F`.
    pub fn span_residual(&self, t: &CMatrix) -> f64 {
        t.dist(&self.project(t))
    }

    /// Largest distance of an element of `other` from this span, and vice versa.
    pub fn mutual_projection_residual(&self, other: &CommutantBasis) -> f64 {
        let a = other.elements.iter().map(|t| self.span_residual(t)).fold(0.0, f64::max);
        let b = self.elements.iter().map(|t| other.span_residual(t)).fold(0.0, f64::max);
        a.max(b)
    }

    /// Largest distance of an adjoint `T_i*` from the span.
    pub fn adjoint_closure_residual(&self) -> f64 {
        self.elements
            .iter()
            .map(|t| self.span_residual(&t.adjoint()))
            .fold(0.0, f64::max)
    }
}

/// `dim π(G)′ = |G|⁻¹ Σ_x |χ(x)|²` for a unitary representation.
pub fn character_commutant_dim(rep: &Rep) -> usize {
    let n = rep.group().order() as f64;
    let s: f64 = rep.character().iter().map(|c| c.norm_sqr()).sum();
    (s / n).round() as usize
}

/// Orthonormal basis of `{T : T π(x) = π(x) T for all x}`.
pub fn commutant_basis(rep: &Rep) -> CommutantBasis {
    let d = rep.dim();
    let n = rep.group().order();
    let expected = character_commutant_dim(rep);
    let inv_n = 1.0 / n as f64;
    // Columns of every π(x), read once.
    let columns: Vec<Vec<Vec<C64>>> = rep
        .matrices()
        .iter()
        .map(|m| (0..d).map(|k| m.column(k)).collect())
        .collect();
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(expected);
    'outer: for k in 0..d {
        for l in 0..d {
            if basis.len() >= expected {
                break 'outer;
            }
            // Average of E_kl: |G|⁻¹ Σ_x π(x)e_k (π(x)e_l)*.
            let mut w = alloc::vec![C64::new(0.0, 0.0); d * d];
            for cols in &columns {
                let (u, v) = (&cols[k], &cols[l]);
                for (i, &ui) in u.iter().enumerate() {
                    if ui == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let row = &mut w[i * d..(i + 1) * d];
                    for (r, vj) in row.iter_mut().zip(v) {
                        *r += ui * vj.conj();
                    }
                }
            }
            w.iter_mut().for_each(|z| *z *= inv_n);
            for _ in 0..2 {
                for b in &basis {
                    let c = numerics::inner(&w, b);
                    for (wi, bi) in w.iter_mut().zip(b) {
                        *wi -= c * bi;
                    }
                }
            }
            let nw = numerics::norm(&w);
            if nw > RANK_CUTOFF {
                w.iter_mut().for_each(|z| *z /= nw);
                basis.push(w);
            }
        }
    }
    CommutantBasis {
        dim: d,
        elements: basis
            .into_iter()
            .map(|v| CMatrix::from_vec(d, d, v).expect("d² entries"))
            .collect(),
    }
}

/// Largest commutator `‖T π(x) − π(x) T‖_F` over basis elements and group elements.
pub fn commutation_residual(basis: &CommutantBasis, rep: &Rep) -> f64 {
    basis
        .elements
        .iter()
        .flat_map(|t| rep.matrices().iter().map(move |m| t.commutator_norm(m)))
        .fold(0.0, f64::max)
}

/// Basis of the reduced algebra `{pTp}` acting on `range(p)`, expressed in the
/// orthonormal range basis of `p`.
///
/// Fails with [`Error::NotInvariant`] when `p` itself is not in the span, i.e.
/// does not commute with the representation.
pub fn reduced_commutant(basis: &CommutantBasis, p: &InvariantProjection, tol: f64) -> Result<CommutantBasis> {
    let pm = p.matrix();
    if pm.rows() != basis.dim {
        return Err(Error::DimensionMismatch {
            op: "reduced_commutant",
            expected: basis.dim,
            found: pm.rows(),
        });
    }
    let r = basis.span_residual(pm);
    if !(r <= tol) {
        return Err(Error::NotInvariant(r));
    }
    let q = CMatrix::from_columns(basis.dim, &p.range_basis());
    let qh = q.adjoint();
    let compressed: Vec<CMatrix> = basis.elements.iter().map(|t| &(&qh * t) * &q).collect();
    CommutantBasis::from_spanning(q.cols(), &compressed)
}

/// Reports `max_i |⟨T_i η, ψ⟩ − tr(T_i)|` over the basis.
pub fn is_tracial_pair(
    basis: &CommutantBasis,
    trace: &TraceFunctional,
    eta: &[C64],
    psi: &[C64],
    tol: f64,
) -> Result<Check> {
    for v in [eta, psi] {
        if v.len() != basis.dim {
            return Err(Error::DimensionMismatch {
                op: "is_tracial_pair",
                expected: basis.dim,
                found: v.len(),
            });
        }
    }
    let residual = basis
        .elements
        .iter()
        .map(|t| (numerics::inner(&t.mul_vec(eta), psi) - trace.apply(t)).norm())
        .fold(0.0, f64::max);
    Ok(Check::new("tracial-pair", residual, tol))
}

/// [`is_tracial_pair`] for `λ_G` itself, against the orthonormal basis
/// `ρ(y)/√|G|` of right translations, without materializing `|G|` matrices.
pub fn is_tracial_pair_regular(group: &FiniteGroup, eta: &[C64], psi: &[C64], tol: f64) -> Result<Check> {
    let n = group.order();
    for v in [eta, psi] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                op: "is_tracial_pair_regular",
                expected: n,
                found: v.len(),
            });
        }
    }
    let scale = 1.0 / (n as f64).sqrt();
    // (ρ(y)η)(x) = η(xy); tr(ρ(y))/|G| = δ_{y,e}.
    let residual = (0..n)
        .map(|y| {
            let ip: C64 = (0..n).map(|x| eta[group.mul(x, y)] * psi[x].conj()).sum();
            let target = if y == group.identity() { 1.0 } else { 0.0 };
            (ip - target).norm() * scale
        })
        .fold(0.0, f64::max);
    Ok(Check::new("tracial-pair", residual, tol))
}

/// Biorthogonality against a known admissible pair: reports
/// `max_i |⟨T_i η, ψ⟩ − ⟨T_i η₀, ψ₀⟩|` over `generators`.
pub fn generalized_biorthogonality(
    rep: &Rep,
    generators: &[CMatrix],
    reference: (&[C64], &[C64]),
    eta: &[C64],
    psi: &[C64],
    tol: f64,
) -> Result<Check> {
    let (eta0, psi0) = reference;
    let refcheck = frames::is_admissible_pair(rep, eta0, psi0, tol)?;
    if !refcheck.pass {
        return Err(Error::ReferencePairNotAdmissible(refcheck.residual));
    }
    for v in [eta, psi] {
        if v.len() != rep.dim() {
            return Err(Error::DimensionMismatch {
                op: "generalized_biorthogonality",
                expected: rep.dim(),
                found: v.len(),
            });
        }
    }
    let residual = generators
        .iter()
        .map(|t| (numerics::inner(&t.mul_vec(eta), psi) - numerics::inner(&t.mul_vec(eta0), psi0)).norm())
        .fold(0.0, f64::max);
    Ok(Check::new("generalized-biorthogonality", residual, tol))
}
