//! Exact invariant rings of finite groups, their Koszul syzygies, and bound audits.
//!
//! All arithmetic is exact over cyclotomic fields. Invariants and syzygies are
//! computed per torus weight block of `⊕ V_i ⊗ C^{k_i}`.

pub mod bounds;
pub mod error;
pub mod field;
pub mod group;
pub mod invariant;
pub mod linalg;
pub mod poly;
pub mod schur;
pub mod syzygy;

pub use bounds::{audit, compute_bounds, inequality_chain_check, m_bound_check, BoundReport, BoundValues, Verdict};
pub use error::{Error, Result};
pub use field::{Cyclotomic, CyclotomicField, Field, Rational};
pub use group::builtin::{builtin, builtin_names, BuiltinGroup};
pub use group::{
    decompose_rep, generate_group, regular_representation, validate_irrep_catalog, FiniteGroup, Generators, IrrepCatalog,
    Representation,
};
pub use invariant::{
    build_e, minimal_generators, molien_series, noether_number, ComplementOrder, GeneratorMode, GeneratorSet,
    InvariantRing, NoetherResult,
};
pub use linalg::Matrix;
pub use poly::{VariableLayout, WeightScope};
pub use schur::{Partition, SchurDecomposition, UniversalSpec};
pub use syzygy::{KoszulComplex, SyzygyResult, TorTable};

/// Size limits shared by every computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Limits {
    pub order_limit: usize,
    pub basis_limit: usize,
    pub conductor_limit: u32,
    /// Largest group order whose Noether number is computed exactly.
    pub exact_noether_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_limit: group::DEFAULT_ORDER_LIMIT,
            basis_limit: group::DEFAULT_BASIS_LIMIT,
            conductor_limit: field::DEFAULT_CONDUCTOR_LIMIT,
            exact_noether_limit: 8,
        }
    }
}
