//! Finite Plancherel transform and the fiberwise admissibility criterion.
//!
//! Convention: `f̂(σ) = Σ_x f(x)·σ(x)*` with Plancherel weights `d_σ/|G|`, so
//!
//! * `Σ_σ (d_σ/|G|)·‖f̂(σ)‖²_F = ‖f‖²`,
//! * `f(x) = |G|⁻¹ Σ_σ d_σ·tr(σ(x) f̂(σ))`,
//! * `(f ∗ g)^(σ) = ĝ(σ)·f̂(σ)` (note the order),
//! * `(λ(x)f)^(σ) = f̂(σ)·σ(x)*`, while the right convolution `𝒰_h` acts as
//!   left multiplication by `ĥ(σ)`.
//!
//! Hence `λ_G` acts on the columns of each block and invariant projections act
//! on the rows: an invariant projection `p = 𝒰_h` is carried to the field
//! `P̂_σ = ĥ(σ)` on the `d_σ`-dimensional multiplicity space. Writing
//! `η̂_σ` for the block of `η` seen from the representation side
//! (`f̂(σ)*`, on which `λ` acts by `σ(x)⊗1`), admissibility of `(η, ψ)` for
//! `range(p)` is the fiber identity `ψ̂_σ* η̂_σ = P̂_σ`, i.e.
//! `ψ̂(σ)·η̂(σ)* = P̂_σ` in transform coordinates.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // inherent float math is only there when std is linked
use num_traits::Float;

use crate::check::Check;
use crate::commutant::commutant_basis;
use crate::error::{Error, Result};
use crate::frames::InvariantProjection;
use crate::group::{
    self, convolution_operator, heisenberg_coords, involution, left_regular_rep, parse_group_spec, restrict_rep,
    FiniteGroup, GroupFamily, GroupVector, Rep, Side,
};
use crate::numerics::{eig_hermitian, CMatrix, C64};
use crate::DEFAULT_TOL;

use rand::Rng;

#[derive(Debug, Clone)]
pub struct Irrep {
    pub label: String,
    pub rep: Rep,
}

/// A complete list of pairwise inequivalent irreducible unitary representations.
#[derive(Debug, Clone)]
pub struct IrrepTable {
    group: Arc<FiniteGroup>,
    irreps: Vec<Irrep>,
}

impl IrrepTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    /// Plancherel weight `d_σ/|G|`.
    pub fn weight(&self, i: usize) -> f64 {
        self.irreps[i].rep.dim() as f64 / self.group.order() as f64
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|i| i.rep.dim()).collect()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.irreps.iter().position(|i| i.label == label)
    }
}

fn root_of_unity(k: i64, n: usize) -> C64 {
    let th = 2.0 * core::f64::consts::PI * (k.rem_euclid(n as i64)) as f64 / n as f64;
    C64::new(th.cos(), th.sin())
}

fn scalar(z: C64) -> CMatrix {
    CMatrix::from_vec(1, 1, vec![z]).expect("finite")
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

/// Labelled irrep matrices before validation.
type RawIrreps = Vec<(String, Vec<CMatrix>)>;

/// Irreps of one factor, as (label, matrix per factor element).
fn factor_irreps(family: GroupFamily) -> Result<RawIrreps> {
    let mut out = Vec::new();
    match family {
        GroupFamily::Cyclic(n) => {
            for k in 0..n {
                let mats = (0..n).map(|x| scalar(root_of_unity((k * x) as i64, n))).collect();
                out.push((format!("chi{k}"), mats));
            }
        }
        GroupFamily::Dihedral(n) => {
            // r^k s^j at j·n + k.
            let sign = |e: usize| if e.is_multiple_of(2) { 1.0 } else { -1.0 };
            let one_dim = |name: &str, f: &dyn Fn(usize, usize) -> f64| {
                let mats = (0..2 * n)
                    .map(|x| scalar(C64::new(f(x / n, x % n), 0.0)))
                    .collect::<Vec<_>>();
                (String::from(name), mats)
            };
            out.push(one_dim("trivial", &|_, _| 1.0));
            out.push(one_dim("sign", &|j, _| sign(j)));
            if n % 2 == 0 {
                out.push(one_dim("alt", &|_, k| sign(k)));
                out.push(one_dim("alt-sign", &|j, k| sign(j + k)));
            }
            for h in 1..=(n - 1) / 2 {
                let mats = (0..2 * n)
                    .map(|x| {
                        let (j, k) = (x / n, x % n);
                        let r = CMatrix::from_fn(2, 2, |a, b| match (a, b) {
                            (0, 0) => root_of_unity((h * k) as i64, n),
                            (1, 1) => root_of_unity(-((h * k) as i64), n),
                            _ => C64::new(0.0, 0.0),
                        });
                        if j == 0 {
                            r
                        } else {
                            let s = CMatrix::from_fn(2, 2, |a, b| C64::new(if a != b { 1.0 } else { 0.0 }, 0.0));
                            &r * &s
                        }
                    })
                    .collect();
                out.push((format!("rho{h}"), mats));
            }
        }
        GroupFamily::Heisenberg(1) => {
            out.push((String::from("trivial"), vec![CMatrix::identity(1)]));
        }
        GroupFamily::Heisenberg(p) => {
            if !is_prime(p) {
                return Err(Error::UnsupportedGroup(format!("heisenberg:{p}")));
            }
            let order = p * p * p;
            for j in 0..p {
                for k in 0..p {
                    let mats = (0..order)
                        .map(|x| {
                            let (a, b, _) = heisenberg_coords(p, x);
                            scalar(root_of_unity((j * a + k * b) as i64, p))
                        })
                        .collect();
                    out.push((format!("chi{j},{k}"), mats));
                }
            }
            // (a,b,c) ↦ ω^{tc} X^b Z^a, with X e_u = e_{u+1}, Z e_u = ω^{tu} e_u.
            for t in 1..p {
                let mats = (0..order)
                    .map(|x| {
                        let (a, b, c) = heisenberg_coords(p, x);
                        let mut m = CMatrix::zeros(p, p);
                        for u in 0..p {
                            m[((u + b) % p, u)] = root_of_unity((t * (c + a * u)) as i64, p);
                        }
                        m
                    })
                    .collect();
                out.push((format!("schrodinger{t}"), mats));
            }
        }
    }
    Ok(out)
}

/// Irreps for groups produced by [`group::builtin_group`]: cyclic, dihedral,
/// Heisenberg over a prime field, and direct products of these.
pub fn builtin_irreps(group: &Arc<FiniteGroup>) -> Result<IrrepTable> {
    let factors = parse_group_spec(group.label()).map_err(|_| Error::UnsupportedGroup(group.label().into()))?;
    // The label must describe this very table.
    let rebuilt = group::builtin_group(group.label()).map_err(|_| Error::UnsupportedGroup(group.label().into()))?;
    if rebuilt.cayley_table() != group.cayley_table() {
        return Err(Error::UnsupportedGroup(group.label().into()));
    }
    let per_factor: Vec<RawIrreps> = factors.iter().map(|&f| factor_irreps(f)).collect::<Result<_>>()?;
    let orders: Vec<usize> = factors.iter().map(GroupFamily::order).collect();
    let n = group.order();

    let mut combos: RawIrreps = Vec::new();
    let mut index = vec![0usize; factors.len()];
    loop {
        let label = index
            .iter()
            .enumerate()
            .map(|(f, &i)| per_factor[f][i].0.clone())
            .collect::<Vec<_>>()
            .join("⊗");
        let mats = (0..n)
            .map(|x| {
                let mut rest = x;
                let mut coords = vec![0; factors.len()];
                for f in (0..factors.len()).rev() {
                    coords[f] = rest % orders[f];
                    rest /= orders[f];
                }
                coords.iter().enumerate().fold(CMatrix::identity(1), |acc, (f, &c)| {
                    acc.kron(&per_factor[f][index[f]].1[c])
                })
            })
            .collect();
        combos.push((label, mats));
        // Odometer over the per-factor irrep lists.
        let mut f = factors.len();
        loop {
            if f == 0 {
                return validate_irreps(group, combos);
            }
            f -= 1;
            index[f] += 1;
            if index[f] < per_factor[f].len() {
                break;
            }
            index[f] = 0;
        }
    }
}

/// Checks, in order: unitary homomorphism, irreducibility (commutant
/// dimension 1), pairwise inequivalence (character inner products) and
/// completeness `Σ d_σ² = |G|`.
pub fn validate_irreps(group: &Arc<FiniteGroup>, supplied: Vec<(String, Vec<CMatrix>)>) -> Result<IrrepTable> {
    let n = group.order() as f64;
    let mut irreps = Vec::with_capacity(supplied.len());
    for (label, mats) in supplied {
        let rep = Rep::new(group.clone(), mats).map_err(|e| match e {
            Error::NotHomomorphism { residual, .. } => Error::NotHomomorphism {
                label: label.clone(),
                residual,
            },
            other => other,
        })?;
        let commutant_dim = commutant_basis(&rep).len();
        if commutant_dim != 1 {
            return Err(Error::NotIrreducible { label, commutant_dim });
        }
        irreps.push(Irrep { label, rep });
    }
    let characters: Vec<Vec<C64>> = irreps.iter().map(|i| i.rep.character()).collect();
    for a in 0..irreps.len() {
        for b in 0..a {
            let ip: C64 = characters[a]
                .iter()
                .zip(&characters[b])
                .map(|(x, y)| x * y.conj())
                .sum::<C64>()
                / n;
            if ip.norm() > 0.5 {
                return Err(Error::NotInequivalent(irreps[b].label.clone(), irreps[a].label.clone()));
            }
        }
    }
    let sum: usize = irreps.iter().map(|i| i.rep.dim() * i.rep.dim()).sum();
    if sum != group.order() {
        return Err(Error::NotComplete {
            sum,
            order: group.order(),
        });
    }
    Ok(IrrepTable {
        group: group.clone(),
        irreps,
    })
}

/// Splits sorted eigenvalues into clusters separated by gaps above `gap`.
fn clusters(values: &[f64], gap: f64) -> Vec<core::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > gap {
            out.push(start..i);
            start = i;
        }
    }
    out
}

fn exact_sqrt(k: usize) -> Option<usize> {
    let r = (k as f64).sqrt().round() as usize;
    (r * r == k).then_some(r)
}

fn random_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// One attempt of the numerical decomposition; `None` when the random
/// elements were not generic enough to separate the spectra.
fn try_numeric_irreps<R: Rng + ?Sized>(group: &Arc<FiniteGroup>, rng: &mut R) -> Result<Option<RawIrreps>> {
    let n = group.order();
    let lam = left_regular_rep(group);
    // Hermitian central element: coefficient c on a class, conj(c) on its inverse class.
    let classes = group.conjugacy_classes();
    let mut class_of = vec![0; n];
    for (k, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = k;
        }
    }
    let mut coeff: Vec<Option<C64>> = vec![None; classes.len()];
    for k in 0..classes.len() {
        if coeff[k].is_none() {
            let inv = class_of[group.inv(classes[k][0])];
            let c = random_c64(rng);
            if inv == k {
                coeff[k] = Some(C64::new(c.re, 0.0));
            } else {
                coeff[k] = Some(c);
                coeff[inv] = Some(c.conj());
            }
        }
    }
    let z = GroupVector::new(group.clone(), (0..n).map(|x| coeff[class_of[x]].unwrap()).collect())?;
    let central = eig_hermitian(&convolution_operator(&z, Side::Right))?;
    let scale = central.max().abs().max(central.min().abs()).max(1.0);
    let mut out = Vec::new();
    for range in clusters(&central.eigenvalues, 1e-6 * scale) {
        let Some(d) = exact_sqrt(range.len()) else {
            return Ok(None);
        };
        let iso: Vec<Vec<C64>> = range.map(|k| central.eigenvectors.column(k)).collect();
        let q = CMatrix::from_columns(n, &iso);
        let basis = if d == 1 {
            iso
        } else {
            // Split the isotypic block with a random Hermitian element of the commutant.
            let r = GroupVector::new(group.clone(), (0..n).map(|_| random_c64(rng)).collect())?;
            let f = GroupVector::new(
                group.clone(),
                r.data().iter().zip(involution(&r).data()).map(|(a, b)| a + b).collect(),
            )?;
            let a = &(&q.adjoint() * &convolution_operator(&f, Side::Right)) * &q;
            let e = eig_hermitian(&a)?;
            let sc = e.max().abs().max(e.min().abs()).max(1.0);
            let parts = clusters(&e.eigenvalues, 1e-6 * sc);
            if parts.len() != d || parts.iter().any(|p| p.len() != d) {
                return Ok(None);
            }
            parts[0].clone().map(|k| q.mul_vec(&e.eigenvectors.column(k))).collect()
        };
        let rep = restrict_rep(&lam, &basis, DEFAULT_TOL * (n as f64).sqrt())?;
        out.push((d, rep.matrices().to_vec()));
    }
    out.sort_by_key(|(d, _)| *d);
    Ok(Some(
        out.into_iter()
            .enumerate()
            .map(|(i, (_, m))| (format!("irrep{i}"), m))
            .collect(),
    ))
}

/// Irreps of an arbitrary finite group, found numerically inside `λ_G`:
/// a random central element separates the isotypic components, and a random
/// Hermitian element of the commutant splits each into irreducible pieces.
/// The result passes [`validate_irreps`]; bases are only unique up to
/// unitary equivalence and depend on `rng`.
pub fn numeric_irreps<R: Rng + ?Sized>(group: &Arc<FiniteGroup>, rng: &mut R) -> Result<IrrepTable> {
    const ATTEMPTS: usize = 8;
    for _ in 0..ATTEMPTS {
        if let Some(found) = try_numeric_irreps(group, rng)? {
            return validate_irreps(group, found);
        }
    }
    Err(Error::UnsupportedGroup(format!(
        "{}: spectra did not separate after {ATTEMPTS} attempts",
        group.label()
    )))
}

/// One `d_σ × d_σ` block per irrep.
#[derive(Debug, Clone)]
pub struct PlancherelCoefficients<'a> {
    table: &'a IrrepTable,
    blocks: Vec<CMatrix>,
}

impl<'a> PlancherelCoefficients<'a> {
    /// Blocks must match the table's irrep dimensions.
    pub fn new(table: &'a IrrepTable, blocks: Vec<CMatrix>) -> Result<Self> {
        if blocks.len() != table.len() {
            return Err(Error::DimensionMismatch {
                op: "PlancherelCoefficients::new",
                expected: table.len(),
                found: blocks.len(),
            });
        }
        for (b, irrep) in blocks.iter().zip(&table.irreps) {
            let d = irrep.rep.dim();
            if b.rows() != d || b.cols() != d {
                return Err(Error::DimensionMismatch {
                    op: "PlancherelCoefficients::new",
                    expected: d,
                    found: b.rows(),
                });
            }
        }
        Ok(PlancherelCoefficients { table, blocks })
    }

    pub fn table(&self) -> &'a IrrepTable {
        self.table
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    /// `Σ_σ (d_σ/|G|)·‖f̂(σ)‖²_F`.
    pub fn weighted_norm_sqr(&self) -> f64 {
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, b)| self.table.weight(i) * b.frob_norm().powi(2))
            .sum()
    }
}

pub fn plancherel_transform<'a>(table: &'a IrrepTable, f: &GroupVector) -> Result<PlancherelCoefficients<'a>> {
    if !group::same_group(table.group(), f.group()) {
        return Err(Error::GroupMismatch);
    }
    let blocks = table
        .irreps
        .iter()
        .map(|irrep| {
            let d = irrep.rep.dim();
            let mut acc = CMatrix::zeros(d, d);
            for (x, &fx) in f.data().iter().enumerate() {
                if fx == C64::new(0.0, 0.0) {
                    continue;
                }
                let m = irrep.rep.matrix(x);
                for i in 0..d {
                    for j in 0..d {
                        acc[(i, j)] += fx * m[(j, i)].conj();
                    }
                }
            }
            acc
        })
        .collect();
    Ok(PlancherelCoefficients { table, blocks })
}

/// `f(x) = |G|⁻¹ Σ_σ d_σ·tr(σ(x) f̂(σ))`.
pub fn inverse_plancherel(coeffs: &PlancherelCoefficients<'_>) -> GroupVector {
    let table = coeffs.table;
    let g = table.group();
    let n = g.order();
    let data = (0..n)
        .map(|x| {
            table
                .irreps
                .iter()
                .zip(&coeffs.blocks)
                .map(|(irrep, b)| {
                    let m = irrep.rep.matrix(x);
                    let d = irrep.rep.dim();
                    // tr(M B) = Σ_ij M[i,j] B[j,i]
                    let mut t = C64::new(0.0, 0.0);
                    for i in 0..d {
                        for j in 0..d {
                            t += m[(i, j)] * b[(j, i)];
                        }
                    }
                    t * d as f64
                })
                .sum::<C64>()
                / n as f64
        })
        .collect();
    GroupVector::new(g.clone(), data).expect("length n")
}

/// Verifies `(f ∗ g)^(σ) = ĝ(σ)·f̂(σ)` for every σ.
pub fn convolution_to_product_check(table: &IrrepTable, f: &GroupVector, g: &GroupVector, tol: f64) -> Result<Check> {
    let fg = group::convolve(f, g)?;
    let a = plancherel_transform(table, &fg)?;
    let fh = plancherel_transform(table, f)?;
    let gh = plancherel_transform(table, g)?;
    let residual = (0..table.len())
        .map(|i| a.blocks[i].dist(&(&gh.blocks[i] * &fh.blocks[i])))
        .fold(0.0, f64::max);
    Ok(Check::new("convolution-to-product", residual, tol))
}

/// Field of projections `P̂_σ = ĥ(σ)`, `h = p δ_e`, on the multiplicity spaces.
#[derive(Debug, Clone)]
pub struct FiberProjectionField<'a> {
    table: &'a IrrepTable,
    projections: Vec<CMatrix>,
    reconstruction_residual: f64,
}

impl<'a> FiberProjectionField<'a> {
    pub fn table(&self) -> &'a IrrepTable {
        self.table
    }

    pub fn projections(&self) -> &[CMatrix] {
        &self.projections
    }

    /// `‖𝒰_h − p‖_F` where `h` is rebuilt from the field.
    pub fn reconstruction_residual(&self) -> f64 {
        self.reconstruction_residual
    }

    /// `rank(P̂_σ)`: number of eigenvalues above ½.
    pub fn ranks(&self) -> Vec<usize> {
        self.projections
            .iter()
            .map(|p| {
                eig_hermitian(p)
                    .map(|e| e.eigenvalues.iter().filter(|&&x| x > 0.5).count())
                    .unwrap_or(0)
            })
            .collect()
    }

    /// `max_σ max(‖P̂² − P̂‖, ‖P̂ − P̂*‖)`.
    pub fn projection_residual(&self) -> f64 {
        self.projections
            .iter()
            .map(|p| (p * p).dist(p).max(p.dist(&p.adjoint())))
            .fold(0.0, f64::max)
    }
}

pub fn fiber_projections<'a>(
    table: &'a IrrepTable,
    p: &InvariantProjection,
    tol: f64,
) -> Result<FiberProjectionField<'a>> {
    if !group::same_group(table.group(), p.group()) {
        return Err(Error::GroupMismatch);
    }
    let g = table.group();
    let h = GroupVector::new(g.clone(), p.matrix().column(g.identity()))?;
    let hat = plancherel_transform(table, &h)?;
    let rebuilt = convolution_operator(&inverse_plancherel(&hat), Side::Right);
    let reconstruction_residual = rebuilt.dist(p.matrix());
    if !(reconstruction_residual <= tol) {
        return Err(Error::NotInvariant(reconstruction_residual));
    }
    Ok(FiberProjectionField {
        table,
        projections: hat.blocks,
        reconstruction_residual,
    })
}

/// Inverse of [`fiber_projections`]: `p = 𝒰_h` with `ĥ(σ) = fibers[σ]`.
pub fn projection_from_fibers(table: &IrrepTable, fibers: &[CMatrix]) -> Result<InvariantProjection> {
    let coeffs = PlancherelCoefficients::new(table, fibers.to_vec())?;
    let h = inverse_plancherel(&coeffs);
    let n = table.group().order() as f64;
    InvariantProjection::new(
        table.group().clone(),
        convolution_operator(&h, Side::Right),
        DEFAULT_TOL * n.sqrt(),
    )
}

/// Projection onto the σ-isotypic component of `ℓ²(G)` (all `d_σ` copies).
pub fn isotypic_projection(table: &IrrepTable, index: usize) -> Result<InvariantProjection> {
    let fibers: Vec<CMatrix> = table
        .irreps
        .iter()
        .enumerate()
        .map(|(i, irrep)| {
            let d = irrep.rep.dim();
            if i == index {
                CMatrix::identity(d)
            } else {
                CMatrix::zeros(d, d)
            }
        })
        .collect();
    projection_from_fibers(table, &fibers)
}

/// Reports `max_σ ‖ψ̂(σ)·η̂(σ)* − P̂_σ‖_F` for `η, ψ ∈ range(p)`.
pub fn fiber_admissibility_check(
    table: &IrrepTable,
    p: &InvariantProjection,
    eta: &GroupVector,
    psi: &GroupVector,
    tol: f64,
) -> Result<Check> {
    let n = table.group().order() as f64;
    let range_tol = DEFAULT_TOL * n.sqrt();
    for v in [eta, psi] {
        if !group::same_group(table.group(), v.group()) {
            return Err(Error::GroupMismatch);
        }
        let r = p.range_residual(v.data());
        if !(r <= range_tol) {
            return Err(Error::NotInRange(r));
        }
    }
    let field = fiber_projections(table, p, range_tol)?;
    let eh = plancherel_transform(table, eta)?;
    let ph = plancherel_transform(table, psi)?;
    let residual = (0..table.len())
        .map(|i| (&ph.blocks[i] * &eh.blocks[i].adjoint()).dist(&field.projections[i]))
        .fold(0.0, f64::max);
    Ok(Check::new("fiber-admissibility", residual, tol))
}

/// `ν = Σ_σ (d_σ/|G|)·rank(P̂_σ)`.
pub fn rank_measure(field: &FiberProjectionField<'_>) -> f64 {
    field
        .ranks()
        .iter()
        .enumerate()
        .map(|(i, &r)| field.table.weight(i) * r as f64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{admissible_vector_for_projection, projection_from_spanning, trace_of_projection};
    use crate::gabor::wh_group_build;
    use crate::group::builtin_group;
    use crate::numerics;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn arc(spec: &str) -> Arc<FiniteGroup> {
        Arc::new(builtin_group(spec).unwrap())
    }

    fn raw(table: &IrrepTable) -> RawIrreps {
        table
            .irreps()
            .iter()
            .map(|i| (i.label.clone(), i.rep.matrices().to_vec()))
            .collect()
    }

    #[test]
    fn builtin_dimensions() {
        let t = builtin_irreps(&arc("cyclic:4")).unwrap();
        assert_eq!(t.dims(), vec![1; 4]);
        let mut d = builtin_irreps(&arc("dihedral:4")).unwrap().dims();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 1, 1, 2]);
        let h = builtin_irreps(&arc("heisenberg:3")).unwrap();
        let mut d = h.dims();
        d.sort_unstable();
        assert_eq!(d, [vec![1; 9], vec![3, 3]].concat());
        assert_eq!(d.iter().map(|x| x * x).sum::<usize>(), 27);
        for spec in [
            "dihedral:1",
            "dihedral:5",
            "heisenberg:2",
            "cyclic:2*dihedral:3",
            "heisenberg:1",
        ] {
            let g = arc(spec);
            let t = builtin_irreps(&g).unwrap();
            assert_eq!(t.dims().iter().map(|x| x * x).sum::<usize>(), g.order(), "{spec}");
        }
    }

    #[test]
    fn unsupported_groups() {
        assert!(matches!(
            builtin_irreps(&arc("heisenberg:4")),
            Err(Error::UnsupportedGroup(_))
        ));
        let z2 = group::group_from_cayley(&[vec![0, 1], vec![1, 0]], "custom").unwrap();
        assert!(matches!(builtin_irreps(&Arc::new(z2)), Err(Error::UnsupportedGroup(_))));
    }

    #[test]
    fn validation_failures() {
        let g = arc("dihedral:3");
        let t = builtin_irreps(&g).unwrap();
        assert!(validate_irreps(&g, raw(&t)).is_ok());
        let mut missing = raw(&t);
        missing.pop();
        assert!(matches!(validate_irreps(&g, missing), Err(Error::NotComplete { .. })));
        let mut dup = raw(&t);
        dup.push(dup[0].clone());
        assert!(matches!(validate_irreps(&g, dup), Err(Error::NotInequivalent(..))));
        let mut broken = raw(&t);
        broken[2].1[1] = CMatrix::identity(2);
        assert!(matches!(
            validate_irreps(&g, broken),
            Err(Error::NotHomomorphism { ref label, .. }) if label == "rho1"
        ));

        let c2 = arc("cyclic:2");
        let t = builtin_irreps(&c2).unwrap();
        let mut with_reducible = raw(&t);
        let sign = CMatrix::from_real_diagonal(&[1.0, -1.0]);
        with_reducible.push(("reducible".into(), vec![CMatrix::identity(2), sign]));
        assert!(matches!(
            validate_irreps(&c2, with_reducible),
            Err(Error::NotIrreducible { commutant_dim: 2, .. })
        ));
    }

    #[test]
    fn transform_examples() {
        let g = arc("dihedral:3");
        let t = builtin_irreps(&g).unwrap();
        let e = GroupVector::delta(g.clone(), 0);
        let hat = plancherel_transform(&t, &e).unwrap();
        for (b, d) in hat.blocks().iter().zip(t.dims()) {
            assert_eq!(b, &CMatrix::identity(d));
        }
        let c2 = arc("cyclic:2");
        let t2 = builtin_irreps(&c2).unwrap();
        let (a, b) = (C64::new(0.7, 0.1), C64::new(-0.2, 1.5));
        let f = GroupVector::new(c2.clone(), vec![a, b]).unwrap();
        let hat = plancherel_transform(&t2, &f).unwrap();
        assert!((hat.blocks()[0][(0, 0)] - (a + b)).norm() < 1e-15);
        assert!((hat.blocks()[1][(0, 0)] - (a - b)).norm() < 1e-15);
        assert!(plancherel_transform(&t2, &e).is_err());
    }

    #[test]
    fn parseval_and_inverse() {
        let g = arc("dihedral:3");
        let t = builtin_irreps(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let f = sample::group_vector(&mut rng, &g);
        let hat = plancherel_transform(&t, &f).unwrap();
        assert!((hat.weighted_norm_sqr() - f.norm().powi(2)).abs() <= 1e-10);
        let back = inverse_plancherel(&hat);
        assert!(numerics::vec_dist(back.data(), f.data()) <= 1e-10);

        let zeros: Vec<CMatrix> = t.dims().iter().map(|&d| CMatrix::zeros(d, d)).collect();
        let z = inverse_plancherel(&PlancherelCoefficients::new(&t, zeros).unwrap());
        assert_eq!(z, GroupVector::zeros(g.clone()));
        let ids: Vec<CMatrix> = t.dims().iter().map(|&d| CMatrix::identity(d)).collect();
        let e = inverse_plancherel(&PlancherelCoefficients::new(&t, ids).unwrap());
        assert!(numerics::vec_dist(e.data(), GroupVector::delta(g.clone(), 0).data()) < 1e-15);
    }

    #[test]
    fn convolution_ordering() {
        let g = arc("heisenberg:2");
        let t = builtin_irreps(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let f = sample::group_vector(&mut rng, &g);
        let h = sample::group_vector(&mut rng, &g);
        assert!(convolution_to_product_check(&t, &f, &h, 1e-10).unwrap().pass);
        let e = GroupVector::delta(g.clone(), 0);
        assert!(convolution_to_product_check(&t, &f, &e, 1e-12).unwrap().pass);
        // The opposite order fails on a non-abelian group.
        let fg = group::convolve(&f, &h).unwrap();
        let a = plancherel_transform(&t, &fg).unwrap();
        let fh = plancherel_transform(&t, &f).unwrap();
        let gh = plancherel_transform(&t, &h).unwrap();
        let wrong = (0..t.len())
            .map(|i| a.blocks()[i].dist(&(&fh.blocks()[i] * &gh.blocks()[i])))
            .fold(0.0, f64::max);
        assert!(wrong > 1e-3);

        let c = arc("cyclic:5");
        let tc = builtin_irreps(&c).unwrap();
        let f = sample::group_vector(&mut rng, &c);
        let h = sample::group_vector(&mut rng, &c);
        assert!(convolution_to_product_check(&tc, &f, &h, 1e-12).unwrap().pass);
        assert!(convolution_to_product_check(&tc, &h, &f, 1e-12).unwrap().pass);
    }

    #[test]
    fn fiber_examples() {
        let c2 = arc("cyclic:2");
        let t = builtin_irreps(&c2).unwrap();
        let field = fiber_projections(&t, &InvariantProjection::identity(c2.clone()), 1e-9).unwrap();
        assert_eq!(field.ranks(), vec![1, 1]);
        assert!((rank_measure(&field) - 1.0).abs() < 1e-15);

        let lam = left_regular_rep(&c2);
        let one = C64::new(1.0, 0.0);
        let p = projection_from_spanning(&lam, &[vec![one, one]]).unwrap();
        let field = fiber_projections(&t, &p, 1e-9).unwrap();
        assert!((field.projections()[0][(0, 0)] - one).norm() < 1e-15);
        assert!(field.projections()[1][(0, 0)].norm() < 1e-15);
        assert!((rank_measure(&field) - 0.5).abs() < 1e-15);

        let d4 = arc("dihedral:4");
        let t = builtin_irreps(&d4).unwrap();
        let rho = t.position("rho1").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let fibers: Vec<CMatrix> = t
            .dims()
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                if i == rho {
                    sample::subspace_projection(&mut rng, d, 1)
                } else {
                    CMatrix::zeros(d, d)
                }
            })
            .collect();
        let p = projection_from_fibers(&t, &fibers).unwrap();
        let field = fiber_projections(&t, &p, 1e-9).unwrap();
        let expected: Vec<usize> = (0..t.len()).map(|i| usize::from(i == rho)).collect();
        assert_eq!(field.ranks(), expected);
        assert!(field.projection_residual() < 1e-12);
    }

    #[test]
    fn fiber_criterion_examples() {
        let g = arc("dihedral:4");
        let t = builtin_irreps(&g).unwrap();
        let id = InvariantProjection::identity(g.clone());
        let e = GroupVector::delta(g.clone(), 0);
        assert!(fiber_admissibility_check(&t, &id, &e, &e, 1e-9).unwrap().pass);

        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let p = sample::nonzero_invariant_projection(&mut rng, &t);
        let v = admissible_vector_for_projection(&p).unwrap();
        assert!(fiber_admissibility_check(&t, &p, &v, &v, 1e-9).unwrap().pass);
        let v2 = v.scale(C64::new(2.0, 0.0));
        assert!(!fiber_admissibility_check(&t, &p, &v, &v2, 1e-9).unwrap().pass);

        if p.rank() < g.order() {
            let outside = sample::group_vector(&mut rng, &g);
            assert!(matches!(
                fiber_admissibility_check(&t, &p, &outside, &v, 1e-9),
                Err(Error::NotInRange(_))
            ));
        }
    }

    #[test]
    fn rank_measure_matches_trace() {
        let g = arc("dihedral:4");
        let t = builtin_irreps(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for _ in 0..20 {
            let p = sample::invariant_projection(&mut rng, &t);
            let field = fiber_projections(&t, &p, 1e-9).unwrap();
            assert!((rank_measure(&field) - trace_of_projection(&p)).abs() < 1e-9);
        }
    }

    #[test]
    fn isotypic_restriction_of_dihedral3() {
        let g = arc("dihedral:3");
        let t = builtin_irreps(&g).unwrap();
        let p = isotypic_projection(&t, t.position("rho1").unwrap()).unwrap();
        assert_eq!(p.rank(), 4);
        let lam = left_regular_rep(&g);
        let r = restrict_rep(&lam, &p.range_basis(), 1e-9).unwrap();
        assert_eq!(r.dim(), 4);
        assert!(r.homomorphism_residual() <= 1e-10);
    }

    #[test]
    fn numeric_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(46);
        for g in [arc("dihedral:4"), arc("heisenberg:3"), arc("cyclic:6")] {
            let builtin = builtin_irreps(&g).unwrap();
            let numeric = numeric_irreps(&g, &mut rng).unwrap();
            let mut a = builtin.dims();
            a.sort_unstable();
            assert_eq!(numeric.dims(), a);
        }
        let wh = wh_group_build(12, 3, 2).unwrap();
        let t = numeric_irreps(wh.group(), &mut rng).unwrap();
        assert_eq!(t.dims().iter().map(|d| d * d).sum::<usize>(), 48);
        // Center has order q = 2 and quotient Z_4 × Z_6 gives 24 characters.
        assert_eq!(t.dims().iter().filter(|&&d| d == 1).count(), 24);
    }
}
