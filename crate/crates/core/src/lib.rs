//! Executable admissibility theory for representations of finite groups.
//!
//! The crate builds coefficient operators `V_η` for unitary representations of
//! finite groups, verifies admissible pairs (coherent-state expansions) by three
//! independent routes (direct reconstruction, traciality on the commutant, and
//! the fiberwise Plancherel criterion), and carries the same machinery over to
//! finite Weyl-Heisenberg (Gabor) systems on `C^L`, where admissibility becomes
//! Wexler-Raz biorthogonality over the adjoint lattice.
//!
//! Everything here is `no_std` + `alloc`; file formats and the command-line
//! front end live in the `frametrace` crate.
//!
//! Conventions used throughout:
//!
//! * inner products are linear in the first slot: `⟨f, g⟩ = Σ f(x)·conj(g(x))`;
//! * Haar measure on a finite group is counting measure;
//! * the natural trace on `VN_r(G)` is `matrix-trace / |G|`.

#![no_std]
// `!(r <= tol)` is deliberate throughout: a NaN residual must fail.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod check;
pub mod commutant;
pub mod error;
pub mod frames;
pub mod gabor;
pub mod group;
pub mod numerics;
pub mod plancherel;
pub mod sample;

pub use check::Check;
pub use error::{Error, GroupAxiom, Result};
pub use numerics::{CMatrix, HermEig, C64};

/// Default relative tolerance for operator identities.
pub const DEFAULT_TOL: f64 = 1e-9;

/// An operator is treated as singular when `λ_min ≤ FLOOR · λ_max`.
pub const INVERTIBILITY_FLOOR: f64 = 1e-12;

/// Relative cutoff used when extracting numerical ranks and null spaces.
pub const RANK_CUTOFF: f64 = 1e-9;
