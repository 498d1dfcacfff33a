//! Finite groups, `ℓ²(G)` with counting measure, and unitary representations.
//!
//! Elements are dense indices `0..n`. A [`FiniteGroup`] is only ever built
//! from a Cayley table that passed exhaustive validation, so every other
//! module may index into it without further checks.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // inherent float math is only there when std is linked
use num_traits::Float;

use crate::error::{Error, GroupAxiom, Result};
use crate::numerics::{self, CMatrix, C64};
use crate::DEFAULT_TOL;

/// Associativity is checked exhaustively, so construction is capped here.
pub const MAX_ORDER: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    cayley: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cayley[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverses[x]
    }

    pub fn cayley_row(&self, x: usize) -> &[usize] {
        &self.cayley[x * self.order..(x + 1) * self.order]
    }

    /// The Cayley table as nested rows.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|x| self.cayley_row(x).to_vec()).collect()
    }

    /// Smallest `k ≥ 1` with `x^k = e`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|g| self.mul(self.mul(g, x), self.inv(g))).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Same group, new label.
    pub fn relabeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// Validates a Cayley table and derives identity and inverses.
///
/// Errors name the first violated axiom, checked in the order: square,
/// Latin square, identity, associativity.
pub fn group_from_cayley(table: &[Vec<usize>], label: impl Into<String>) -> Result<FiniteGroup> {
    let n = table.len();
    if n > MAX_ORDER {
        return Err(Error::GroupTooLarge(n));
    }
    let not_a_group = |axiom, detail: String| Err(Error::NotAGroup { axiom, detail });
    if n == 0 {
        return not_a_group(GroupAxiom::Square, ": empty table".into());
    }
    if let Some(r) = table.iter().position(|row| row.len() != n) {
        return not_a_group(
            GroupAxiom::Square,
            format!(": row {r} has {} entries, expected {n}", table[r].len()),
        );
    }
    let mut cayley = Vec::with_capacity(n * n);
    for row in table {
        cayley.extend_from_slice(row);
    }
    if let Some(pos) = cayley.iter().position(|&v| v >= n) {
        return not_a_group(
            GroupAxiom::LatinSquare,
            format!(": entry ({}, {}) = {} is out of range", pos / n, pos % n, cayley[pos]),
        );
    }
    let mut seen = vec![false; n];
    for x in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for y in 0..n {
            let v = cayley[x * n + y];
            if core::mem::replace(&mut seen[v], true) {
                return not_a_group(GroupAxiom::LatinSquare, format!(": row {x} repeats {v}"));
            }
        }
    }
    for y in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for x in 0..n {
            let v = cayley[x * n + y];
            if core::mem::replace(&mut seen[v], true) {
                return not_a_group(GroupAxiom::LatinSquare, format!(": column {y} repeats {v}"));
            }
        }
    }
    let identity = match (0..n).find(|&e| (0..n).all(|x| cayley[e * n + x] == x && cayley[x * n + e] == x)) {
        Some(e) => e,
        None => return not_a_group(GroupAxiom::Identity, ": no two-sided identity".into()),
    };
    // In a Latin square every row contains e exactly once.
    let inverses: Vec<usize> = (0..n)
        .map(|x| (0..n).find(|&y| cayley[x * n + y] == identity).unwrap_or(identity))
        .collect();
    for x in 0..n {
        for y in 0..n {
            let xy = cayley[x * n + y];
            for z in 0..n {
                if cayley[xy * n + z] != cayley[x * n + cayley[y * n + z]] {
                    return not_a_group(GroupAxiom::Associativity, format!(": ({x}·{y})·{z} ≠ {x}·({y}·{z})"));
                }
            }
        }
    }
    Ok(FiniteGroup {
        label: label.into(),
        order: n,
        cayley,
        identity,
        inverses,
    })
}

/// One factor of a built-in group spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupFamily {
    Cyclic(usize),
    Dihedral(usize),
    Heisenberg(usize),
}

impl GroupFamily {
    pub fn order(&self) -> usize {
        match *self {
            GroupFamily::Cyclic(n) => n,
            GroupFamily::Dihedral(n) => 2 * n,
            GroupFamily::Heisenberg(n) => n * n * n,
        }
    }

    fn product(&self, x: usize, y: usize) -> usize {
        match *self {
            GroupFamily::Cyclic(n) => (x + y) % n,
            // r^k s^j stored at j·n + k.
            GroupFamily::Dihedral(n) => {
                let (j, k) = (x / n, x % n);
                let (m, l) = (y / n, y % n);
                let rot = if j == 0 { (k + l) % n } else { (k + n - l) % n };
                ((j + m) % 2) * n + rot
            }
            // Unitriangular [[1,a,c],[0,1,b],[0,0,1]] stored at a·n² + b·n + c.
            GroupFamily::Heisenberg(n) => {
                let (a, b, c) = heisenberg_coords(n, x);
                let (a2, b2, c2) = heisenberg_coords(n, y);
                let c3 = (c + c2 + a * b2) % n;
                ((a + a2) % n) * n * n + ((b + b2) % n) * n + c3
            }
        }
    }
}

impl core::fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GroupFamily::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupFamily::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupFamily::Heisenberg(n) => write!(f, "heisenberg:{n}"),
        }
    }
}

pub(crate) fn heisenberg_coords(n: usize, x: usize) -> (usize, usize, usize) {
    (x / (n * n), (x / n) % n, x % n)
}

/// Parses `cyclic:n`, `dihedral:n`, `heisenberg:n` and `*`-separated products.
pub fn parse_group_spec(spec: &str) -> Result<Vec<GroupFamily>> {
    let unknown = || Error::UnknownGroupSpec(spec.to_string());
    let mut factors = Vec::new();
    for part in spec.split('*') {
        let (name, arg) = part.trim().split_once(':').ok_or_else(unknown)?;
        let n: usize = arg.trim().parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        factors.push(match name.trim() {
            "cyclic" => GroupFamily::Cyclic(n),
            "dihedral" => GroupFamily::Dihedral(n),
            "heisenberg" => GroupFamily::Heisenberg(n),
            _ => return Err(unknown()),
        });
    }
    Ok(factors)
}

/// Canonical label for a list of factors, e.g. `cyclic:2*dihedral:3`.
pub fn spec_label(factors: &[GroupFamily]) -> String {
    let parts: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
    parts.join("*")
}

/// Builds a group from a spec string such as `dihedral:4` or `cyclic:2*cyclic:3`.
///
/// Products enumerate elements lexicographically, last factor fastest.
pub fn builtin_group(spec: &str) -> Result<FiniteGroup> {
    let factors = parse_group_spec(spec)?;
    let order = factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.order()))
        .filter(|&n| n <= MAX_ORDER)
        .ok_or(Error::GroupTooLarge(usize::MAX))?;
    let split = |mut x: usize| {
        let mut coords = vec![0; factors.len()];
        for (i, f) in factors.iter().enumerate().rev() {
            coords[i] = x % f.order();
            x /= f.order();
        }
        coords
    };
    let table: Vec<Vec<usize>> = (0..order)
        .map(|x| {
            let cx = split(x);
            (0..order)
                .map(|y| {
                    let cy = split(y);
                    factors
                        .iter()
                        .enumerate()
                        .fold(0, |acc, (i, f)| acc * f.order() + f.product(cx[i], cy[i]))
                })
                .collect()
        })
        .collect();
    group_from_cayley(&table, spec_label(&factors))
}

/// A complex function on a finite group, i.e. an element of `ℓ²(G)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupVector {
    group: Arc<FiniteGroup>,
    data: Vec<C64>,
}

impl GroupVector {
    pub fn new(group: Arc<FiniteGroup>, data: Vec<C64>) -> Result<Self> {
        if data.len() != group.order() {
            return Err(Error::DimensionMismatch {
                op: "GroupVector::new",
                expected: group.order(),
                found: data.len(),
            });
        }
        Ok(GroupVector { group, data })
    }

    pub fn zeros(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        GroupVector {
            group,
            data: vec![C64::new(0.0, 0.0); n],
        }
    }

    /// Point mass at `x`.
    pub fn delta(group: Arc<FiniteGroup>, x: usize) -> Self {
        let mut v = Self::zeros(group);
        v.data[x] = C64::new(1.0, 0.0);
        v
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn inner(&self, other: &GroupVector) -> C64 {
        numerics::inner(&self.data, &other.data)
    }

    pub fn norm(&self) -> f64 {
        numerics::norm(&self.data)
    }

    pub fn scale(&self, s: C64) -> GroupVector {
        GroupVector {
            group: self.group.clone(),
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn same_group(&self, other: &GroupVector) -> bool {
        same_group(&self.group, &other.group)
    }
}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a.cayley == b.cayley
}

/// `(f ∗ g)(x) = Σ_y f(y)·g(y⁻¹x)`.
pub fn convolve(f: &GroupVector, g: &GroupVector) -> Result<GroupVector> {
    if !f.same_group(g) {
        return Err(Error::GroupMismatch);
    }
    let grp = &f.group;
    let mut out = vec![C64::new(0.0, 0.0); grp.order()];
    for (y, &fy) in f.data.iter().enumerate() {
        if fy == C64::new(0.0, 0.0) {
            continue;
        }
        // z = y⁻¹x ranges over G as x does; x = yz.
        for (z, &gz) in g.data.iter().enumerate() {
            out[grp.mul(y, z)] += fy * gz;
        }
    }
    Ok(GroupVector {
        group: grp.clone(),
        data: out,
    })
}

/// `f*(x) = conj(f(x⁻¹))`.
pub fn involution(f: &GroupVector) -> GroupVector {
    let grp = &f.group;
    GroupVector {
        group: grp.clone(),
        data: (0..grp.order()).map(|x| f.data[grp.inv(x)].conj()).collect(),
    }
}

/// A unitary representation: one `d × d` matrix per group element.
#[derive(Debug, Clone)]
pub struct Rep {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl Rep {
    /// Validates identity, homomorphism and unitarity within `DEFAULT_TOL·√d`.
    pub fn new(group: Arc<FiniteGroup>, matrices: Vec<CMatrix>) -> Result<Self> {
        let dim = matrices.first().map_or(0, CMatrix::rows);
        Self::with_tol(group, matrices, DEFAULT_TOL * (dim.max(1) as f64).sqrt())
    }

    pub fn with_tol(group: Arc<FiniteGroup>, matrices: Vec<CMatrix>, tol: f64) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::DimensionMismatch {
                op: "Rep::new",
                expected: group.order(),
                found: matrices.len(),
            });
        }
        let dim = matrices[0].rows();
        if let Some(m) = matrices.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch {
                op: "Rep::new",
                expected: dim,
                found: if m.rows() != dim { m.rows() } else { m.cols() },
            });
        }
        let rep = Rep { group, dim, matrices };
        let residual = rep.homomorphism_residual();
        if !(residual <= tol) {
            return Err(Error::NotHomomorphism {
                label: String::new(),
                residual,
            });
        }
        Ok(rep)
    }

    /// Skips validation; for constructions that are exact by design.
    pub(crate) fn new_unchecked(group: Arc<FiniteGroup>, matrices: Vec<CMatrix>) -> Self {
        let dim = matrices[0].rows();
        Rep { group, dim, matrices }
    }

    /// Largest of `‖π(e) − I‖`, `‖π(x)π(y) − π(xy)‖`, `‖π(x)*π(x) − I‖` (Frobenius).
    pub fn homomorphism_residual(&self) -> f64 {
        let id = CMatrix::identity(self.dim);
        let g = &self.group;
        let mut worst = self.matrices[g.identity()].dist(&id);
        for x in 0..g.order() {
            let mx = &self.matrices[x];
            worst = worst.max((&mx.adjoint() * mx).dist(&id));
            for y in 0..g.order() {
                worst = worst.max((mx * &self.matrices[y]).dist(&self.matrices[g.mul(x, y)]));
            }
        }
        worst
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, x: usize) -> &CMatrix {
        &self.matrices[x]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    /// Character `x ↦ tr π(x)`.
    pub fn character(&self) -> Vec<C64> {
        self.matrices.iter().map(CMatrix::trace).collect()
    }

    /// `π(x) v`.
    pub fn act(&self, x: usize, v: &[C64]) -> Vec<C64> {
        self.matrices[x].mul_vec(v)
    }
}

/// `(λ(x) f)(y) = f(x⁻¹y)`, i.e. `λ(x) δ_z = δ_{xz}`.
pub fn left_regular_rep(group: &Arc<FiniteGroup>) -> Rep {
    let n = group.order();
    let matrices = (0..n)
        .map(|x| {
            let mut m = CMatrix::zeros(n, n);
            for z in 0..n {
                m[(group.mul(x, z), z)] = C64::new(1.0, 0.0);
            }
            m
        })
        .collect();
    Rep::new_unchecked(group.clone(), matrices)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `g ↦ f ∗ g`.
    Left,
    /// `g ↦ g ∗ f`, the operator `𝒰_f` generating `VN_r(G)`.
    Right,
}

/// Matrix of a convolution operator on `ℓ²(G)`.
pub fn convolution_operator(f: &GroupVector, side: Side) -> CMatrix {
    let g = &f.group;
    let n = g.order();
    match side {
        // (g ∗ f)(x) = Σ_y g(y) f(y⁻¹x)
        Side::Right => CMatrix::from_fn(n, n, |x, y| f.data[g.mul(g.inv(y), x)]),
        // (f ∗ g)(x) = Σ_y f(xy⁻¹) g(y)
        Side::Left => CMatrix::from_fn(n, n, |x, y| f.data[g.mul(x, g.inv(y))]),
    }
}

/// Compression of `rep` to the span of an orthonormal family.
///
/// Fails with [`Error::NotInvariant`] when some `π(x)` moves the span by more
/// than `tol` (Frobenius norm of `(I − PP*)π(x)P`).
pub fn restrict_rep(rep: &Rep, basis: &[Vec<C64>], tol: f64) -> Result<Rep> {
    let d = rep.dim();
    if let Some(v) = basis.iter().find(|v| v.len() != d) {
        return Err(Error::DimensionMismatch {
            op: "restrict_rep",
            expected: d,
            found: v.len(),
        });
    }
    if basis.is_empty() {
        return Err(Error::DimensionMismatch {
            op: "restrict_rep",
            expected: 1,
            found: 0,
        });
    }
    let p = CMatrix::from_columns(d, basis);
    let ph = p.adjoint();
    let mut worst: f64 = 0.0;
    let mut compressed = Vec::with_capacity(rep.matrices.len());
    for m in &rep.matrices {
        let mp = m * &p;
        let c = &ph * &mp;
        worst = worst.max(mp.dist(&(&p * &c)));
        compressed.push(c);
    }
    if !(worst <= tol) {
        return Err(Error::NotInvariant(worst));
    }
    Ok(Rep::new_unchecked(rep.group.clone(), compressed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn arc(spec: &str) -> Arc<FiniteGroup> {
        Arc::new(builtin_group(spec).unwrap())
    }

    fn conjugacy_class_count(g: &FiniteGroup) -> usize {
        let mut class_of = vec![usize::MAX; g.order()];
        let mut count = 0;
        for x in 0..g.order() {
            if class_of[x] != usize::MAX {
                continue;
            }
            for y in 0..g.order() {
                class_of[g.mul(g.mul(y, x), g.inv(y))] = count;
            }
            count += 1;
        }
        count
    }

    fn center_size(g: &FiniteGroup) -> usize {
        (0..g.order())
            .filter(|&x| (0..g.order()).all(|y| g.mul(x, y) == g.mul(y, x)))
            .count()
    }

    #[test]
    fn conjugacy_classes_partition() {
        for spec in ["dihedral:4", "heisenberg:3", "cyclic:5*dihedral:3"] {
            let g = builtin_group(spec).unwrap();
            let classes = g.conjugacy_classes();
            assert_eq!(classes.len(), conjugacy_class_count(&g));
            assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), g.order());
            assert_eq!(classes.iter().filter(|c| c.len() == 1).count(), center_size(&g));
        }
    }

    #[test]
    fn z2_from_table() {
        let g = group_from_cayley(&[vec![0, 1], vec![1, 0]], "Z2").unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn rejects_non_latin() {
        let err = group_from_cayley(&[vec![0, 1], vec![1, 1]], "bad").unwrap_err();
        assert!(matches!(
            err,
            Error::NotAGroup {
                axiom: GroupAxiom::LatinSquare,
                ..
            }
        ));
    }

    #[test]
    fn rejects_missing_identity_and_non_associative() {
        // Latin square without identity: x·y = x − y mod 3.
        let err = group_from_cayley(&[vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]], "x").unwrap_err();
        assert!(matches!(
            err,
            Error::NotAGroup {
                axiom: GroupAxiom::Identity,
                ..
            }
        ));
        // Loop of order 5 with identity but not associative.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = group_from_cayley(&t, "loop").unwrap_err();
        assert!(matches!(
            err,
            Error::NotAGroup {
                axiom: GroupAxiom::Associativity,
                ..
            }
        ));
        let err = group_from_cayley(&[vec![0, 1]], "x").unwrap_err();
        assert!(matches!(
            err,
            Error::NotAGroup {
                axiom: GroupAxiom::Square,
                ..
            }
        ));
    }

    #[test]
    fn relabeled_cyclic_keeps_element_orders() {
        let g = builtin_group("cyclic:6").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // perm[i] is the new name of element i.
        let mut perm: Vec<usize> = (0..6).collect();
        perm.shuffle(&mut rng);
        let mut table = vec![vec![0; 6]; 6];
        for x in 0..6 {
            for y in 0..6 {
                table[perm[x]][perm[y]] = perm[g.mul(x, y)];
            }
        }
        let h = group_from_cayley(&table, "relabeled").unwrap();
        let mut a: Vec<usize> = (0..6).map(|x| g.element_order(x)).collect();
        let mut b: Vec<usize> = (0..6).map(|x| h.element_order(x)).collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
        assert_eq!(h.identity(), perm[0]);
    }

    #[test]
    fn builtin_families() {
        let c4 = builtin_group("cyclic:4").unwrap();
        assert!(c4.is_abelian());
        let mut orders: Vec<usize> = (0..4).map(|x| c4.element_order(x)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 4, 4]);

        let d4 = builtin_group("dihedral:4").unwrap();
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        assert_eq!(conjugacy_class_count(&d4), 5);

        let h3 = builtin_group("heisenberg:3").unwrap();
        assert_eq!(h3.order(), 27);
        assert_eq!(center_size(&h3), 3);

        let p = builtin_group("cyclic:2 * dihedral:3").unwrap();
        assert_eq!(p.order(), 12);
        assert_eq!(p.label(), "cyclic:2*dihedral:3");
        assert_eq!(conjugacy_class_count(&p), 6);
    }

    #[test]
    fn bad_specs() {
        for s in ["", "cyclic", "cyclic:0", "torus:3", "cyclic:x", "cyclic:600"] {
            assert!(builtin_group(s).is_err(), "{s}");
        }
    }

    #[test]
    fn convolution_examples() {
        let g = arc("cyclic:3");
        let d = |x| GroupVector::delta(g.clone(), x);
        assert_eq!(convolve(&d(1), &d(2)).unwrap(), d(0));
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f = sample::group_vector(&mut rng, &g);
        assert!(numerics::vec_dist(convolve(&f, &d(0)).unwrap().data(), f.data()) < 1e-15);
        let other = GroupVector::delta(arc("cyclic:4"), 0);
        assert_eq!(convolve(&f, &other), Err(Error::GroupMismatch));
    }

    #[test]
    fn convolution_matches_double_loop() {
        let g = arc("dihedral:3");
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let f = sample::group_vector(&mut rng, &g);
        let h = sample::group_vector(&mut rng, &g);
        let fast = convolve(&f, &h).unwrap();
        for x in 0..g.order() {
            let mut acc = C64::new(0.0, 0.0);
            for y in 0..g.order() {
                acc += f.data()[y] * h.data()[g.mul(g.inv(y), x)];
            }
            assert!((acc - fast.data()[x]).norm() < 1e-14);
        }
    }

    #[test]
    fn involution_examples() {
        let g = arc("cyclic:3");
        assert_eq!(
            involution(&GroupVector::delta(g.clone(), 1)),
            GroupVector::delta(g.clone(), 2)
        );
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let f = sample::group_vector(&mut rng, &g);
        assert_eq!(involution(&involution(&f)), f);
        assert!((involution(&f).norm() - f.norm()).abs() < 1e-15);
    }

    #[test]
    fn left_regular_examples() {
        let g = arc("cyclic:2");
        let lam = left_regular_rep(&g);
        let swap = CMatrix::from_fn(2, 2, |i, j| C64::new(if i != j { 1.0 } else { 0.0 }, 0.0));
        assert_eq!(lam.matrix(1), &swap);

        let g = arc("dihedral:3");
        let lam = left_regular_rep(&g);
        for x in 0..g.order() {
            let e = GroupVector::delta(g.clone(), g.identity());
            assert_eq!(lam.act(x, e.data()), GroupVector::delta(g.clone(), x).into_data());
        }
        assert_eq!(lam.homomorphism_residual(), 0.0);
    }

    #[test]
    fn convolution_operator_examples() {
        let g = arc("dihedral:4");
        let e = GroupVector::delta(g.clone(), g.identity());
        assert_eq!(convolution_operator(&e, Side::Right), CMatrix::identity(8));
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let f = sample::group_vector(&mut rng, &g);
        let h = sample::group_vector(&mut rng, &g);
        let u = convolution_operator(&f, Side::Right);
        let l = convolution_operator(&f, Side::Left);
        assert!(numerics::vec_dist(&u.mul_vec(h.data()), convolve(&h, &f).unwrap().data()) < 1e-13);
        assert!(numerics::vec_dist(&l.mul_vec(h.data()), convolve(&f, &h).unwrap().data()) < 1e-13);
        let lam = left_regular_rep(&g);
        for x in 0..g.order() {
            assert!(u.commutator_norm(lam.matrix(x)) <= 1e-12);
        }
        let expected = f.data()[g.identity()] * g.order() as f64;
        assert!((u.trace() - expected).norm() < 1e-13);
    }

    #[test]
    fn restriction_examples() {
        let g = arc("cyclic:2");
        let lam = left_regular_rep(&g);
        let s = 0.5f64.sqrt();
        let r = restrict_rep(&lam, &[vec![C64::new(s, 0.0), C64::new(s, 0.0)]], 1e-12).unwrap();
        assert_eq!(r.dim(), 1);
        for x in 0..2 {
            assert!((r.matrix(x)[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-15);
        }
        let bad = restrict_rep(&lam, &[vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]], 1e-12);
        assert!(matches!(bad, Err(Error::NotInvariant(_))));

        let g = arc("dihedral:3");
        let lam = left_regular_rep(&g);
        let std_basis: Vec<Vec<C64>> = (0..6).map(|i| GroupVector::delta(g.clone(), i).into_data()).collect();
        let full = restrict_rep(&lam, &std_basis, 1e-12).unwrap();
        for x in 0..6 {
            assert_eq!(full.matrix(x), lam.matrix(x));
        }
    }
}
