//! Finite Weyl-Heisenberg (Gabor) systems on `C^L`.
//!
//! Lattice operators are `M_{mb} T_{na}` with `m ∈ Z_{L/b}`, `n ∈ Z_{L/a}`,
//! enumerated as `m·(L/a) + n`. The adjoint lattice is
//! `M_{s·L/a} T_{t·L/b}` with `s ∈ Z_a`, `t ∈ Z_b`, enumerated as `s·b + t`
//! (identity first). Redundancy is `L/(ab)`; the Wexler-Raz constant is `ab/L`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // inherent float math is only there when std is linked
use num_traits::Float;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::group::{group_from_cayley, FiniteGroup, Rep};
use crate::numerics::{self, eig_hermitian, CMatrix, C64};
use crate::{INVERTIBILITY_FLOOR, RANK_CUTOFF};

fn phase(k: i64, n: usize) -> C64 {
    let th = 2.0 * core::f64::consts::PI * k.rem_euclid(n as i64) as f64 / n as f64;
    C64::new(th.cos(), th.sin())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_lattice(l: usize, a: usize, b: usize) -> Result<()> {
    if l == 0 || a == 0 || b == 0 || !l.is_multiple_of(a) || !l.is_multiple_of(b) {
        return Err(Error::InvalidLattice(format!(
            "steps a={a}, b={b} must be positive divisors of L={l}"
        )));
    }
    Ok(())
}

/// Cyclic shift `(T_x f)(j) = f(j − x)`.
pub fn translation(l: usize, x: usize) -> CMatrix {
    CMatrix::from_fn(l, l, |i, j| C64::new(if i == (j + x) % l { 1.0 } else { 0.0 }, 0.0))
}

/// `(M_w f)(j) = e^{2πiwj/L} f(j)`.
pub fn modulation(l: usize, w: usize) -> CMatrix {
    CMatrix::from_fn(l, l, |i, j| {
        if i == j {
            phase((w * i) as i64, l)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// `M_w T_x` applied to `f` without forming matrices.
pub fn time_frequency_shift(w: usize, x: usize, f: &[C64]) -> Vec<C64> {
    let l = f.len();
    (0..l)
        .map(|j| phase((w * j) as i64, l) * f[(j + l - x % l) % l])
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaborSystem {
    l: usize,
    a: usize,
    b: usize,
    window: Vec<C64>,
}

impl GaborSystem {
    pub fn new(l: usize, a: usize, b: usize, window: Vec<C64>) -> Result<Self> {
        check_lattice(l, a, b)?;
        if window.len() != l {
            return Err(Error::DimensionMismatch {
                op: "GaborSystem::new",
                expected: l,
                found: window.len(),
            });
        }
        if let Some(i) = window.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(GaborSystem { l, a, b, window })
    }

    pub fn len(&self) -> usize {
        self.l
    }

    pub fn is_empty(&self) -> bool {
        self.l == 0
    }

    pub fn time_step(&self) -> usize {
        self.a
    }

    pub fn freq_step(&self) -> usize {
        self.b
    }

    pub fn window(&self) -> &[C64] {
        &self.window
    }

    /// Same lattice, different window.
    pub fn with_window(&self, window: Vec<C64>) -> Result<Self> {
        GaborSystem::new(self.l, self.a, self.b, window)
    }

    /// `(L/a)(L/b)`.
    pub fn system_size(&self) -> usize {
        (self.l / self.a) * (self.l / self.b)
    }

    /// `L/(ab)`.
    pub fn redundancy(&self) -> f64 {
        self.l as f64 / (self.a * self.b) as f64
    }

    /// `ab/L`.
    pub fn wexler_raz_constant(&self) -> f64 {
        (self.a * self.b) as f64 / self.l as f64
    }

    /// The lattice vectors `M_{mb} T_{na} g` in row order.
    pub fn atoms(&self) -> Vec<Vec<C64>> {
        let (mm, nn) = (self.l / self.b, self.l / self.a);
        let mut out = Vec::with_capacity(mm * nn);
        for m in 0..mm {
            for n in 0..nn {
                out.push(time_frequency_shift(m * self.b, n * self.a, &self.window));
            }
        }
        out
    }
}

/// Analysis matrix: row `m·(L/a) + n` is the conjugate of `M_{mb} T_{na} g`.
pub fn gabor_coefficient_map(sys: &GaborSystem) -> CMatrix {
    let atoms = sys.atoms();
    CMatrix::from_fn(atoms.len(), sys.l, |r, j| atoms[r][j].conj())
}

/// `S = 𝒯_g* 𝒯_g`.
pub fn gabor_frame_operator(sys: &GaborSystem) -> CMatrix {
    let t = gabor_coefficient_map(sys);
    &t.adjoint() * &t
}

/// `𝒯_γ* 𝒯_g` for a second window `γ` on the same lattice.
pub fn gabor_mixed_operator(sys: &GaborSystem, gamma: &[C64]) -> Result<CMatrix> {
    let other = sys.with_window(gamma.to_vec())?;
    Ok(&gabor_coefficient_map(&other).adjoint() * &gabor_coefficient_map(sys))
}

/// `‖𝒯_γ* 𝒯_g − Id‖_F`.
pub fn gabor_reconstruction_residual(sys: &GaborSystem, gamma: &[C64]) -> Result<f64> {
    Ok(gabor_mixed_operator(sys, gamma)?.dist(&CMatrix::identity(sys.l)))
}

/// Canonical dual window `S⁻¹g`; [`Error::NotAFrame`] when `S` is singular.
pub fn gabor_canonical_dual(sys: &GaborSystem) -> Result<Vec<C64>> {
    let s = gabor_frame_operator(sys);
    let eig = eig_hermitian(&s)?;
    let (min, max) = (eig.min(), eig.max());
    if !(max > 0.0) || min <= INVERTIBILITY_FLOOR * max {
        return Err(Error::NotAFrame { min, max });
    }
    Ok(eig.map_spectrum(|x| 1.0 / x).mul_vec(&sys.window))
}

/// Tight window `√(b/L)·χ_{[0,a)}`; requires `ab ≤ L`.
pub fn reference_window(l: usize, a: usize, b: usize) -> Result<Vec<C64>> {
    check_lattice(l, a, b)?;
    if a * b > l {
        return Err(Error::InvalidLattice(format!(
            "ab = {} exceeds L = {l}; no tight window exists",
            a * b
        )));
    }
    let c = (b as f64 / l as f64).sqrt();
    Ok((0..l).map(|j| C64::new(if j < a { c } else { 0.0 }, 0.0)).collect())
}

/// `M_{s·L/a} T_{t·L/b}` for `s ∈ Z_a`, `t ∈ Z_b`.
pub fn adjoint_lattice_ops(l: usize, a: usize, b: usize) -> Result<Vec<CMatrix>> {
    check_lattice(l, a, b)?;
    let mut out = Vec::with_capacity(a * b);
    for s in 0..a {
        for t in 0..b {
            out.push(&modulation(l, s * (l / a)) * &translation(l, t * (l / b)));
        }
    }
    Ok(out)
}

/// The lattice operators `M_{mb} T_{na}` in row order.
pub fn lattice_ops(l: usize, a: usize, b: usize) -> Result<Vec<CMatrix>> {
    check_lattice(l, a, b)?;
    let mut out = Vec::with_capacity((l / a) * (l / b));
    for m in 0..l / b {
        for n in 0..l / a {
            out.push(&modulation(l, m * b) * &translation(l, n * a));
        }
    }
    Ok(out)
}

/// `⟨M_{s·L/a} T_{t·L/b} γ, g⟩` over the adjoint lattice.
pub fn wexler_raz_inner_products(sys: &GaborSystem, gamma: &[C64]) -> Result<Vec<C64>> {
    if gamma.len() != sys.l {
        return Err(Error::DimensionMismatch {
            op: "wexler_raz_inner_products",
            expected: sys.l,
            found: gamma.len(),
        });
    }
    let (l, a, b) = (sys.l, sys.a, sys.b);
    let mut out = Vec::with_capacity(a * b);
    for s in 0..a {
        for t in 0..b {
            let moved = time_frequency_shift(s * (l / a), t * (l / b), gamma);
            out.push(numerics::inner(&moved, &sys.window));
        }
    }
    Ok(out)
}

/// Biorthogonality `⟨Aγ, g⟩ = (ab/L)·δ_{A=Id}`; residual is the largest deviation.
pub fn wexler_raz_check(sys: &GaborSystem, gamma: &[C64], tol: f64) -> Result<Check> {
    let c = sys.wexler_raz_constant();
    let residual = wexler_raz_inner_products(sys, gamma)?
        .iter()
        .enumerate()
        .map(|(k, z)| (z - C64::new(if k == 0 { c } else { 0.0 }, 0.0)).norm())
        .fold(0.0, f64::max);
    Ok(Check::new("wexler-raz", residual, tol))
}

/// `𝒯_f* 𝒯_g h = (L/(ab))·𝒯′_h* 𝒯′_g f`, where `𝒯′` runs over the adjoint lattice.
pub fn wr_fundamental_relation_check(
    l: usize,
    a: usize,
    b: usize,
    f: &[C64],
    g: &[C64],
    h: &[C64],
    tol: f64,
) -> Result<Check> {
    check_lattice(l, a, b)?;
    for v in [f, g, h] {
        if v.len() != l {
            return Err(Error::DimensionMismatch {
                op: "wr_fundamental_relation_check",
                expected: l,
                found: v.len(),
            });
        }
    }
    let zero = C64::new(0.0, 0.0);
    // Σ_λ ⟨h, π(λ)g⟩ π(λ)f
    let mut lhs = vec![zero; l];
    for m in 0..l / b {
        for n in 0..l / a {
            let c = numerics::inner(h, &time_frequency_shift(m * b, n * a, g));
            for (acc, v) in lhs.iter_mut().zip(time_frequency_shift(m * b, n * a, f)) {
                *acc += c * v;
            }
        }
    }
    let mut rhs = vec![zero; l];
    for s in 0..a {
        for t in 0..b {
            let (w, x) = (s * (l / a), t * (l / b));
            let c = numerics::inner(f, &time_frequency_shift(w, x, g));
            for (acc, v) in rhs.iter_mut().zip(time_frequency_shift(w, x, h)) {
                *acc += c * v;
            }
        }
    }
    let scale = l as f64 / (a * b) as f64;
    let residual = lhs
        .iter()
        .zip(&rhs)
        .map(|(x, y)| (x - y * scale).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(Check::new("wr-fundamental-relation", residual, tol))
}

/// Orthonormal basis of `{w : 𝒯_w* 𝒯_g = 0}`.
pub fn gabor_dual_defect_basis(sys: &GaborSystem) -> Result<Vec<Vec<C64>>> {
    let l = sys.l;
    // Column k holds vec(𝒯_{e_k}* 𝒯_g); the map w ↦ 𝒯_w* 𝒯_g is linear.
    let analysis = gabor_coefficient_map(sys);
    let mut m = CMatrix::zeros(l * l, l);
    for k in 0..l {
        let mut e = vec![C64::new(0.0, 0.0); l];
        e[k] = C64::new(1.0, 0.0);
        let te = gabor_coefficient_map(&sys.with_window(e)?);
        let block = &te.adjoint() * &analysis;
        for i in 0..l {
            for j in 0..l {
                m[(i * l + j, k)] = block[(i, j)];
            }
        }
    }
    let eig = eig_hermitian(&(&m.adjoint() * &m))?;
    let cutoff = RANK_CUTOFF * eig.max().max(f64::MIN_POSITIVE);
    Ok((0..l)
        .filter(|&k| eig.eigenvalues[k] <= cutoff)
        .map(|k| eig.eigenvectors.column(k))
        .collect())
}

/// Finite Weyl-Heisenberg group: triples `(m, n, z)` with `z ∈ Z_q`,
/// `q = L/gcd(L, ab)`, stored at `(m·(L/a) + n)·q + z`.
#[derive(Debug, Clone)]
pub struct WHGroup {
    l: usize,
    a: usize,
    b: usize,
    q: usize,
    group: Arc<FiniteGroup>,
}

impl WHGroup {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn central_order(&self) -> usize {
        self.q
    }

    pub fn params(&self) -> (usize, usize, usize) {
        (self.l, self.a, self.b)
    }

    pub fn index(&self, m: usize, n: usize, z: usize) -> usize {
        (m * (self.l / self.a) + n) * self.q + z
    }

    pub fn coords(&self, x: usize) -> (usize, usize, usize) {
        let z = x % self.q;
        let rest = x / self.q;
        (rest / (self.l / self.a), rest % (self.l / self.a), z)
    }
}

/// Builds the group with law `(m,n,z)(m′,n′,z′) = (m+m′, n+n′, z+z′−(ab/g)·m′n)`,
/// `g = gcd(L, ab)`, and validates it as a finite group.
pub fn wh_group_build(l: usize, a: usize, b: usize) -> Result<WHGroup> {
    check_lattice(l, a, b)?;
    let g = gcd(l, a * b);
    let q = l / g;
    let k = (a * b / g) % q.max(1);
    let (mm, nn) = (l / b, l / a);
    let order = mm * nn * q;
    if order > crate::group::MAX_ORDER {
        return Err(Error::GroupTooLarge(order));
    }
    let idx = |m: usize, n: usize, z: usize| (m * nn + n) * q + z;
    let mut table = vec![vec![0usize; order]; order];
    for (x, row) in table.iter_mut().enumerate() {
        let (m, n, z) = (x / q / nn, (x / q) % nn, x % q);
        for (y, cell) in row.iter_mut().enumerate() {
            let (m2, n2, z2) = (y / q / nn, (y / q) % nn, y % q);
            let twist = (k * ((m2 * n) % q)) % q;
            *cell = idx((m + m2) % mm, (n + n2) % nn, (z + z2 + q - twist) % q);
        }
    }
    let group = group_from_cayley(&table, format!("wh:{l},{a},{b}"))?;
    Ok(WHGroup {
        l,
        a,
        b,
        q,
        group: Arc::new(group),
    })
}

/// `π(m,n,z) = e^{2πiz/q}·M_{mb} T_{na}` on `C^L`.
pub fn wh_rep(wh: &WHGroup) -> Result<Rep> {
    let mats = (0..wh.group.order())
        .map(|x| {
            let (m, n, z) = wh.coords(x);
            (&modulation(wh.l, m * wh.b) * &translation(wh.l, n * wh.a)).scale(phase(z as i64, wh.q))
        })
        .collect();
    Rep::new(wh.group.clone(), mats)
}

/// `‖q⁻¹·V_g* V_f − 𝒯_g* 𝒯_f‖_F`: averaging over the central part reduces
/// the group coefficient operator to the lattice one.
pub fn wh_bridge_check(l: usize, a: usize, b: usize, f: &[C64], g: &[C64], tol: f64) -> Result<Check> {
    let wh = wh_group_build(l, a, b)?;
    let rep = wh_rep(&wh)?;
    let group_side = crate::frames::synthesis_analysis(&rep, f, g)?.scale_real(1.0 / wh.q as f64);
    let sys = GaborSystem::new(l, a, b, f.to_vec())?;
    let lattice_side = gabor_mixed_operator(&sys, g)?;
    Ok(Check::new("wh-bridge", group_side.dist(&lattice_side), tol))
}
