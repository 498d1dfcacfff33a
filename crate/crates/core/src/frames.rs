//! Coefficient operators, frame operators, dual and admissible vectors, and the
//! natural trace on `VN_r(G)`.
//!
//! For a unitary representation `π` of `G` on `C^d` and a window `η`, the
//! coefficient operator `V_η: C^d → ℓ²(G)` is `(V_η φ)(x) = ⟨φ, π(x)η⟩`. The
//! pair `(η, ψ)` is admissible when `V_ψ* V_η = I`, which gives the weak
//! reconstruction `φ = Σ_x ⟨φ, π(x)η⟩ π(x)ψ`. Every vector is "bounded" here
//! since `G` is finite.

use alloc::sync::Arc;
use alloc::vec::Vec;
#[allow(unused_imports)] // inherent float math is only there when std is linked
use num_traits::Float;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::group::{self, left_regular_rep, FiniteGroup, GroupVector, Rep};
use crate::numerics::{self, eig_hermitian, inv_psd, inv_sqrt_psd, CMatrix, C64};
use crate::{DEFAULT_TOL, INVERTIBILITY_FLOOR, RANK_CUTOFF};

/// `V_η` as a `|G| × d` matrix; row `x` is `(π(x)η)*`.
#[derive(Debug, Clone)]
pub struct CoefficientOperator<'a> {
    rep: &'a Rep,
    window: Vec<C64>,
    matrix: CMatrix,
}

impl<'a> CoefficientOperator<'a> {
    pub fn rep(&self) -> &'a Rep {
        self.rep
    }

    pub fn window(&self) -> &[C64] {
        &self.window
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `max_x ‖V_η π(x) − λ(x) V_η‖_F`.
    pub fn intertwining_residual(&self) -> f64 {
        let g = self.rep.group();
        let lam = left_regular_rep(g);
        (0..g.order())
            .map(|x| (&self.matrix * self.rep.matrix(x)).dist(&(lam.matrix(x) * &self.matrix)))
            .fold(0.0, f64::max)
    }
}

pub fn coefficient_operator<'a>(rep: &'a Rep, eta: &[C64]) -> Result<CoefficientOperator<'a>> {
    if eta.len() != rep.dim() {
        return Err(Error::DimensionMismatch {
            op: "coefficient_operator",
            expected: rep.dim(),
            found: eta.len(),
        });
    }
    let n = rep.group().order();
    let d = rep.dim();
    let mut matrix = CMatrix::zeros(n, d);
    for x in 0..n {
        let orbit = rep.act(x, eta);
        for (j, z) in orbit.iter().enumerate() {
            matrix[(x, j)] = z.conj();
        }
    }
    Ok(CoefficientOperator {
        rep,
        window: eta.to_vec(),
        matrix,
    })
}

/// `S = V* V = Σ_x π(x)η (π(x)η)*`.
pub fn frame_operator(v: &CoefficientOperator<'_>) -> CMatrix {
    &v.matrix.adjoint() * &v.matrix
}

/// `V_η` is a topological embedding iff `λ_min(S) > floor·λ_max(S)`.
pub fn is_frame_vector(v: &CoefficientOperator<'_>, floor: f64) -> bool {
    match eig_hermitian(&frame_operator(v)) {
        Ok(e) => e.max() > 0.0 && e.min() > floor * e.max(),
        Err(_) => false,
    }
}

/// Canonical (minimal-norm) dual `S⁻¹η`.
pub fn canonical_dual(v: &CoefficientOperator<'_>) -> Result<Vec<C64>> {
    let s_inv = inv_psd(&frame_operator(v), INVERTIBILITY_FLOOR)?;
    Ok(s_inv.mul_vec(&v.window))
}

/// Self-dual window `S^{-1/2}η`.
pub fn tighten(v: &CoefficientOperator<'_>) -> Result<Vec<C64>> {
    let r = inv_sqrt_psd(&frame_operator(v), INVERTIBILITY_FLOOR)?;
    Ok(r.mul_vec(&v.window))
}

/// `V_ψ* V_η = Σ_x π(x)ψ (π(x)η)*`.
pub fn synthesis_analysis(rep: &Rep, eta: &[C64], psi: &[C64]) -> Result<CMatrix> {
    let ve = coefficient_operator(rep, eta)?;
    let vp = coefficient_operator(rep, psi)?;
    Ok(&vp.matrix.adjoint() * &ve.matrix)
}

/// Reports `‖V_ψ* V_η − I‖_F`; symmetric in `(η, ψ)`.
pub fn is_admissible_pair(rep: &Rep, eta: &[C64], psi: &[C64], tol: f64) -> Result<Check> {
    let a = synthesis_analysis(rep, eta, psi)?;
    let residual = a.dist(&CMatrix::identity(rep.dim()));
    Ok(Check::new("admissible-pair", residual, tol))
}

/// Orthonormal basis of `W = {w : V_w* V_η = 0}`, the directions in which a
/// dual of `η` may be moved without breaking reconstruction.
pub fn dual_defect_basis(v: &CoefficientOperator<'_>) -> Result<Vec<Vec<C64>>> {
    let rep = v.rep;
    let d = rep.dim();
    let n = rep.group().order();
    // M[(i,k), j] = Σ_x π(x)[i,j]·conj((π(x)η)[k]), so V_w* V_η = mat(M w).
    let orbits: Vec<Vec<C64>> = (0..n).map(|x| rep.act(x, &v.window)).collect();
    let mut m = CMatrix::zeros(d * d, d);
    for (x, orbit) in orbits.iter().enumerate() {
        let px = rep.matrix(x);
        for i in 0..d {
            for k in 0..d {
                let c = orbit[k].conj();
                for j in 0..d {
                    m[(i * d + k, j)] += px[(i, j)] * c;
                }
            }
        }
    }
    let gram = &m.adjoint() * &m;
    let eig = eig_hermitian(&gram)?;
    let cutoff = RANK_CUTOFF * eig.max().max(f64::MIN_POSITIVE);
    let q = &eig.eigenvectors;
    Ok((0..d)
        .filter(|&k| eig.eigenvalues[k] <= cutoff)
        .map(|k| q.column(k))
        .collect())
}

/// Linear functional `T ↦ c · matrix-trace(T)`.
///
/// With `c = 1/|G|` this is the natural trace of `VN_r(G)`, and the same
/// constant normalizes the trace on the commutant of any representation of `G`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceFunctional {
    pub normalization: f64,
}

impl TraceFunctional {
    pub fn for_group(group: &FiniteGroup) -> Self {
        TraceFunctional {
            normalization: 1.0 / group.order() as f64,
        }
    }

    pub fn apply(&self, t: &CMatrix) -> C64 {
        t.trace() * self.normalization
    }
}

/// `tr(T) = matrix-trace(T) / |G|` for `T` acting on `ℓ²(G)`.
pub fn natural_trace(t: &CMatrix, group: &FiniteGroup) -> Result<C64> {
    let n = group.order();
    if t.rows() != n || t.cols() != n {
        return Err(Error::DimensionMismatch {
            op: "natural_trace",
            expected: n,
            found: if t.rows() != n { t.rows() } else { t.cols() },
        });
    }
    Ok(TraceFunctional::for_group(group).apply(t))
}

/// Orthogonal projection on `ℓ²(G)` commuting with the representation it was
/// built from (left translations unless stated otherwise).
#[derive(Debug, Clone)]
pub struct InvariantProjection {
    group: Arc<FiniteGroup>,
    matrix: CMatrix,
}

impl InvariantProjection {
    /// Validates `p² = p = p*` and `λ(x)p = pλ(x)` within `tol`.
    pub fn new(group: Arc<FiniteGroup>, matrix: CMatrix, tol: f64) -> Result<Self> {
        let p = InvariantProjection { group, matrix };
        let r = p.projection_residual()?.max(p.left_invariance_residual());
        if !(r <= tol) {
            return Err(Error::InvariantViolated(r));
        }
        Ok(p)
    }

    /// As [`InvariantProjection::new`], with invariance checked against `rep`.
    pub fn for_rep(rep: &Rep, matrix: CMatrix, tol: f64) -> Result<Self> {
        let p = InvariantProjection {
            group: rep.group().clone(),
            matrix,
        };
        let mut r = p.projection_residual()?;
        for m in rep.matrices() {
            r = r.max(m.commutator_norm(&p.matrix));
        }
        if !(r <= tol) {
            return Err(Error::InvariantViolated(r));
        }
        Ok(p)
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        InvariantProjection {
            group,
            matrix: CMatrix::zeros(n, n),
        }
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        InvariantProjection {
            group,
            matrix: CMatrix::identity(n),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `max(‖p² − p‖_F, ‖p − p*‖_F)`.
    pub fn projection_residual(&self) -> Result<f64> {
        let n = self.group.order();
        if self.matrix.rows() != n || self.matrix.cols() != n {
            return Err(Error::DimensionMismatch {
                op: "InvariantProjection",
                expected: n,
                found: self.matrix.rows(),
            });
        }
        let p = &self.matrix;
        Ok((p * p).dist(p).max(p.dist(&p.adjoint())))
    }

    /// `max_x ‖λ(x)p − pλ(x)‖_F`, using that `λ(x)` permutes coordinates.
    pub fn left_invariance_residual(&self) -> f64 {
        let g = &self.group;
        let n = g.order();
        let p = &self.matrix;
        let mut worst: f64 = 0.0;
        for x in 0..n {
            let xi = g.inv(x);
            let mut acc = 0.0;
            for i in 0..n {
                for j in 0..n {
                    acc += (p[(g.mul(xi, i), j)] - p[(i, g.mul(x, j))]).norm_sqr();
                }
            }
            worst = worst.max(acc.sqrt());
        }
        worst
    }

    /// `round(trace p)`.
    pub fn rank(&self) -> usize {
        let t = self.matrix.trace().re;
        if t <= 0.5 {
            0
        } else {
            (t + 0.5) as usize
        }
    }

    /// Orthonormal basis of `range(p)`: eigenvectors with eigenvalue above ½.
    pub fn range_basis(&self) -> Vec<Vec<C64>> {
        let eig = eig_hermitian(&self.matrix).expect("validated projection is Hermitian");
        let q = eig.eigenvectors_above(0.5);
        (0..q.cols()).map(|k| q.column(k)).collect()
    }

    /// `‖p v − v‖ / max(1, ‖v‖)`.
    pub fn range_residual(&self, v: &[C64]) -> f64 {
        numerics::vec_dist(&self.matrix.mul_vec(v), v) / numerics::norm(v).max(1.0)
    }
}

/// Projection onto the invariant span `{π(x)v : x ∈ G, v ∈ vectors}`.
pub fn projection_from_spanning(rep: &Rep, vectors: &[Vec<C64>]) -> Result<InvariantProjection> {
    let n = rep.group().order();
    if rep.dim() != n {
        return Err(Error::DimensionMismatch {
            op: "projection_from_spanning",
            expected: n,
            found: rep.dim(),
        });
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            op: "projection_from_spanning",
            expected: n,
            found: v.len(),
        });
    }
    let orbit: Vec<Vec<C64>> = vectors
        .iter()
        .flat_map(|v| (0..n).map(move |x| rep.act(x, v)))
        .collect();
    let basis = numerics::orthonormalize(&orbit, RANK_CUTOFF);
    let mut p = CMatrix::zeros(n, n);
    for b in &basis {
        p = &p + &CMatrix::outer(b, b);
    }
    InvariantProjection::for_rep(rep, p, DEFAULT_TOL * (n as f64).sqrt())
}

/// Admissible vector for `λ_G` restricted to `range(p)`: with `h = p δ_e` and
/// `η = h*`, returns `v = p η`, which satisfies `V_v* V_v = p`.
pub fn admissible_vector_for_projection(p: &InvariantProjection) -> Result<GroupVector> {
    let g = p.group();
    let n = g.order();
    let tol = DEFAULT_TOL * (n as f64).sqrt();
    let r = p.projection_residual()?.max(p.left_invariance_residual());
    if !(r <= tol) {
        return Err(Error::InvariantViolated(r));
    }
    let h = GroupVector::new(g.clone(), p.matrix.column(g.identity()))?;
    let eta = group::involution(&h);
    GroupVector::new(g.clone(), p.matrix.mul_vec(eta.data()))
}

/// `tr(p)`; equals `‖η‖²` for every admissible vector `η` of `range(p)`.
pub fn trace_of_projection(p: &InvariantProjection) -> f64 {
    TraceFunctional::for_group(&p.group).apply(&p.matrix).re
}

/// `λ_G` restricted to `range(p)`, in an orthonormal basis of the range.
#[derive(Debug, Clone)]
pub struct Subrepresentation {
    projection: InvariantProjection,
    basis: Vec<Vec<C64>>,
    rep: Rep,
}

impl Subrepresentation {
    pub fn new(projection: InvariantProjection) -> Result<Self> {
        let basis = projection.range_basis();
        let lam = left_regular_rep(projection.group());
        let n = projection.group().order() as f64;
        let rep = group::restrict_rep(&lam, &basis, DEFAULT_TOL * n.sqrt())?;
        Ok(Subrepresentation { projection, basis, rep })
    }

    pub fn projection(&self) -> &InvariantProjection {
        &self.projection
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn basis(&self) -> &[Vec<C64>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates `Q* v` of `v ∈ ℓ²(G)` in the range basis.
    pub fn coords(&self, v: &[C64]) -> Vec<C64> {
        self.basis.iter().map(|b| numerics::inner(v, b)).collect()
    }

    /// `Q c`, back in `ℓ²(G)`.
    pub fn embed(&self, c: &[C64]) -> Vec<C64> {
        let n = self.projection.group().order();
        let mut out = alloc::vec![C64::new(0.0, 0.0); n];
        for (b, &ck) in self.basis.iter().zip(c) {
            for (o, &bi) in out.iter_mut().zip(b) {
                *o += ck * bi;
            }
        }
        out
    }
}
