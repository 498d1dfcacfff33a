use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Group axiom violated by a candidate Cayley table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupAxiom {
    Square,
    LatinSquare,
    Identity,
    Associativity,
}

impl core::fmt::Display for GroupAxiom {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            GroupAxiom::Square => "square table",
            GroupAxiom::LatinSquare => "Latin square",
            GroupAxiom::Identity => "identity",
            GroupAxiom::Associativity => "associativity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: expected {expected}, found {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("non-finite entry at position {0}")]
    NonFinite(usize),
    #[error("matrix is not Hermitian (relative residual {0:e})")]
    NotHermitian(f64),
    #[error("operator is not invertible (λ_min = {min:e}, λ_max = {max:e})")]
    NotInvertible { min: f64, max: f64 },
    #[error("not a frame (λ_min = {min:e}, λ_max = {max:e})")]
    NotAFrame { min: f64, max: f64 },
    #[error("not a group: {axiom} violated{detail}")]
    NotAGroup { axiom: GroupAxiom, detail: String },
    #[error("group order {0} exceeds the supported maximum of 512")]
    GroupTooLarge(usize),
    #[error("unknown group spec `{0}`")]
    UnknownGroupSpec(String),
    #[error("operands live on different groups")]
    GroupMismatch,
    #[error("representation `{label}` is not a unitary homomorphism (residual {residual:e})")]
    NotHomomorphism { label: String, residual: f64 },
    #[error("subspace is not invariant (residual {0:e})")]
    NotInvariant(f64),
    #[error("projection invariant violated (residual {0:e})")]
    InvariantViolated(f64),
    #[error("reference pair is not admissible (residual {0:e})")]
    ReferencePairNotAdmissible(f64),
    #[error("no built-in irreducible representations for group `{0}`")]
    UnsupportedGroup(String),
    #[error("representation `{label}` is not irreducible (commutant dimension {commutant_dim})")]
    NotIrreducible { label: String, commutant_dim: usize },
    #[error("irreducible representations `{0}` and `{1}` are equivalent")]
    NotInequivalent(String, String),
    #[error("irrep table incomplete: Σ d² = {sum} but |G| = {order}")]
    NotComplete { sum: usize, order: usize },
    #[error("vector is not in the range of the projection (residual {0:e})")]
    NotInRange(f64),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
}
