//! Schur-functor combinatorics and the multigraded decomposition of invariant
//! rings and syzygies of `V(U_•) = ⊕ V_i ⊗ U_i`.

mod decompose;
mod partition;

pub use decompose::{
    row_bound_check, schur_multiplicities, weight_decomposition, RowBoundReport, SchurDecomposition, Space,
};
pub use partition::{kostka_number, lr_coefficient, partitions_of, schur_dim, Partition};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::IrrepCatalog;
use crate::invariant::{build_e, ComplementOrder, GeneratorMode, InvariantRing, NoetherResult};
use crate::poly::monomial_count;
use crate::syzygy::{syzygy_le, KoszulComplex};

/// The specialization `dim U_i = k_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalSpec {
    pub multiplicities: Vec<usize>,
    pub irrep_degrees: Vec<usize>,
}

impl UniversalSpec {
    pub fn new(catalog: &IrrepCatalog, multiplicities: Vec<usize>) -> Result<Self> {
        if multiplicities.len() != catalog.len() {
            return Err(Error::invalid("one multiplicity per irrep required"));
        }
        Ok(UniversalSpec { multiplicities, irrep_degrees: catalog.degrees() })
    }

    /// `Σ d_i k_i`.
    pub fn degree(&self) -> usize {
        self.multiplicities.iter().zip(&self.irrep_degrees).map(|(k, d)| k * d).sum()
    }

    pub fn ring(&self, catalog: &IrrepCatalog, basis_limit: usize) -> Result<InvariantRing> {
        InvariantRing::isotypic(catalog, &self.multiplicities, basis_limit)
    }

    /// The same spec with every `k_i` increased by `by`.
    pub fn grown(&self, by: usize) -> Self {
        UniversalSpec {
            multiplicities: self.multiplicities.iter().map(|k| k + by).collect(),
            irrep_degrees: self.irrep_degrees.clone(),
        }
    }
}

/// `W_p`: the specialization `k_i = βp + d_i`, of dimension `βmp + g`.
pub fn build_universal_rep(catalog: &IrrepCatalog, beta: &NoetherResult, p: usize) -> Result<UniversalSpec> {
    if p == 0 {
        return Err(Error::invalid("W_p needs p ≥ 1"));
    }
    let degrees = catalog.degrees();
    let ks = degrees.iter().map(|d| beta.value * p + d).collect();
    let spec = UniversalSpec::new(catalog, ks)?;
    let (m, g) = (catalog.m(), catalog.group().order());
    if spec.degree() != beta.value * m * p + g {
        return Err(Error::inconsistency("dim W_p ≠ βmp + g"));
    }
    Ok(spec)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CauchyCheck {
    pub lhs: u128,
    pub rhs: u128,
    pub passed: bool,
}

/// `dim Sym^d(V_i ⊗ C^k) = Σ_λ dim S_λ(C^{d_i}) · dim S_λ(C^k)`.
pub fn cauchy_check(catalog: &IrrepCatalog, i: usize, k: usize, d: usize) -> Result<CauchyCheck> {
    let di = *catalog.degrees().get(i).ok_or_else(|| Error::invalid("irrep index out of range"))?;
    let lhs = monomial_count(di * k, d);
    let rhs = partitions_of(d, Some(di.min(k)))
        .iter()
        .map(|l| schur_dim(l, di) as u128 * schur_dim(l, k) as u128)
        .sum();
    Ok(CauchyCheck { lhs, rhs, passed: lhs == rhs })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizationReport {
    pub p: usize,
    pub d: usize,
    pub small: Vec<usize>,
    pub large: Vec<usize>,
    pub dim_small: u64,
    pub dim_large: u64,
    pub passed: bool,
}

/// Compares vanishing of `Tor_{p,d}` at the spec `k` and at `k + 1`.
pub fn stabilization_check(
    catalog: &IrrepCatalog,
    spec: &UniversalSpec,
    beta: &NoetherResult,
    p: usize,
    d: usize,
    mode: GeneratorMode,
    basis_limit: usize,
) -> Result<StabilizationReport> {
    let large = spec.grown(1);
    let dim_small = tor_at(catalog, spec, beta, p, d, mode, basis_limit)?;
    let dim_large = tor_at(catalog, &large, beta, p, d, mode, basis_limit)?;
    Ok(StabilizationReport {
        p,
        d,
        small: spec.multiplicities.clone(),
        large: large.multiplicities,
        dim_small,
        dim_large,
        passed: (dim_small == 0) == (dim_large == 0),
    })
}

fn tor_at(
    catalog: &IrrepCatalog,
    spec: &UniversalSpec,
    beta: &NoetherResult,
    p: usize,
    d: usize,
    mode: GeneratorMode,
    basis_limit: usize,
) -> Result<u64> {
    let ring = spec.ring(catalog, basis_limit)?;
    let gens = build_e(&ring, mode, beta, ComplementOrder::Forward)?;
    KoszulComplex::new(&ring, &gens)?.tor_dimension(p, d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Row {
    pub label: String,
    pub multiplicities: Vec<usize>,
    pub value: Option<usize>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    pub p: usize,
    pub universal: UniversalSpec,
    pub universal_value: Option<usize>,
    pub rows: Vec<Lemma1Row>,
}

impl Lemma1Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

/// `s'_p` (full generator space) of `⊕ V_i ⊗ C^{k_i}`.
pub fn full_syzygy_degree(
    catalog: &IrrepCatalog,
    multiplicities: &[usize],
    beta: &NoetherResult,
    p: usize,
    basis_limit: usize,
) -> Result<Option<usize>> {
    let ring = InvariantRing::isotypic(catalog, multiplicities, basis_limit)?;
    let gens = build_e(&ring, GeneratorMode::Full, beta, ComplementOrder::Forward)?;
    Ok(KoszulComplex::new(&ring, &gens)?.syzygy_degree(p, None)?.value)
}

/// Checks `s'_p(V) ≤ s'_p(W_p)` for each sample `(label, multiplicities)`.
pub fn lemma1_check(
    catalog: &IrrepCatalog,
    beta: &NoetherResult,
    samples: &[(String, Vec<usize>)],
    p: usize,
    basis_limit: usize,
) -> Result<Lemma1Report> {
    let universal = build_universal_rep(catalog, beta, p)?;
    let universal_value = full_syzygy_degree(catalog, &universal.multiplicities, beta, p, basis_limit)?;
    let rows = samples
        .iter()
        .map(|(label, ks)| {
            let value = full_syzygy_degree(catalog, ks, beta, p, basis_limit)?;
            Ok(Lemma1Row {
                label: label.clone(),
                multiplicities: ks.clone(),
                value,
                passed: syzygy_le(value, universal_value),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Lemma1Report { p, universal, universal_value, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::builtin;

    #[test]
    fn universal_rep_dimensions() {
        let c2 = builtin("builtin:cyclic:2").unwrap().catalog;
        let w = build_universal_rep(&c2, &NoetherResult { value: 2, exact: true }, 1).unwrap();
        assert_eq!((w.multiplicities.clone(), w.degree()), (vec![3, 3], 6));
        let c3 = builtin("builtin:cyclic:3").unwrap().catalog;
        let w = build_universal_rep(&c3, &NoetherResult { value: 3, exact: true }, 1).unwrap();
        assert_eq!((w.multiplicities.clone(), w.degree()), (vec![4, 4, 4], 12));
    }

    #[test]
    fn cauchy_examples() {
        let s3 = builtin("builtin:sym:3").unwrap().catalog;
        let c = cauchy_check(&s3, 2, 2, 2).unwrap();
        assert_eq!((c.lhs, c.rhs), (10, 10));
        assert!(cauchy_check(&s3, 0, 4, 3).unwrap().passed);
        assert_eq!(cauchy_check(&s3, 2, 3, 0).unwrap().lhs, 1);
    }

    #[test]
    fn stabilization_on_z2() {
        let c2 = builtin("builtin:cyclic:2").unwrap().catalog;
        let beta = NoetherResult { value: 2, exact: true };
        let spec = build_universal_rep(&c2, &beta, 1).unwrap();
        let r = stabilization_check(&c2, &spec, &beta, 1, 3, GeneratorMode::Full, 20000).unwrap();
        assert!(r.passed && r.dim_small == 0);
    }
}
