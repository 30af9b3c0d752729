//! Fixtures shared by the engine benchmarks.

use syzlab_core::invariant::{noether_number, InvariantRing, NoetherResult};
use syzlab_core::{builtin, IrrepCatalog};

pub const LIMIT: usize = 20_000;

/// Catalog, Noether number and isotypic ring of `⊕ k_i V_i` for a builtin group.
pub fn fixture(name: &str, multiplicities: &[usize]) -> (IrrepCatalog, NoetherResult, InvariantRing) {
    let catalog = builtin(name).expect("builtin exists").catalog;
    let beta = noether_number(&catalog, 8, LIMIT).expect("Noether number");
    let ring = InvariantRing::isotypic(&catalog, multiplicities, LIMIT).expect("ring");
    (catalog, beta, ring)
}
