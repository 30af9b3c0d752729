use std::sync::Arc;

use super::{Character, FiniteGroup, Representation};
use crate::error::{Error, Result};
use crate::field::Cyclotomic;

/// The irreducible representations `V_1, …, V_n` of a group.
#[derive(Debug, Clone)]
pub struct IrrepCatalog {
    group: Arc<FiniteGroup>,
    irreps: Vec<Representation>,
    characters: Vec<Character>,
}

/// Outcome of checking a catalog; `failures` names every identity that fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogValidation {
    pub sum_of_squares: usize,
    pub order: usize,
    pub irrep_count: usize,
    pub class_count: usize,
    pub failures: Vec<String>,
}

impl CatalogValidation {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl IrrepCatalog {
    /// Builds a catalog without validating it.
    pub fn new(group: Arc<FiniteGroup>, irreps: Vec<Representation>) -> Result<Self> {
        if irreps.iter().any(|r| r.group() != &group) {
            return Err(Error::invalid("catalog irreps belong to a different group"));
        }
        let characters = irreps.iter().map(Representation::character).collect();
        Ok(IrrepCatalog { group, irreps, characters })
    }

    /// Builds a catalog and rejects it unless validation passes.
    pub fn validated(group: Arc<FiniteGroup>, irreps: Vec<Representation>) -> Result<Self> {
        let cat = Self::new(group, irreps)?;
        let report = validate_irrep_catalog(&cat);
        if !report.passed() {
            return Err(Error::invalid(format!("irrep catalog invalid: {}", report.failures.join("; "))));
        }
        Ok(cat)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irreps(&self) -> &[Representation] {
        &self.irreps
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.irreps.iter().map(Representation::degree).collect()
    }

    /// `m = Σ d_i`.
    pub fn m(&self) -> usize {
        self.degrees().iter().sum()
    }

    /// Number of conjugacy classes.
    pub fn n(&self) -> usize {
        self.group.class_count()
    }

    /// `⊕_i V_i ⊗ C^{k_i}`, with variables ordered by irrep, then copy.
    pub fn universal_rep(&self, multiplicities: &[usize]) -> Result<Representation> {
        if multiplicities.len() != self.len() {
            return Err(Error::invalid(format!(
                "multiplicity vector has length {}, catalog has {} irreps",
                multiplicities.len(),
                self.len()
            )));
        }
        let parts: Vec<&Representation> =
            self.irreps.iter().zip(multiplicities).flat_map(|(r, &k)| std::iter::repeat_n(r, k)).collect();
        if parts.is_empty() {
            return Ok(Representation::zero(self.group.clone()));
        }
        Representation::direct_sum(&parts)
    }
}

/// Checks `Σ d_i² = g`, that there are `n` irreps, and character orthonormality.
pub fn validate_irrep_catalog(catalog: &IrrepCatalog) -> CatalogValidation {
    let group = catalog.group();
    let sum_of_squares: usize = catalog.degrees().iter().map(|d| d * d).sum();
    let mut failures = Vec::new();
    if sum_of_squares != group.order() {
        failures.push(format!(
            "sum of squared degrees {} ≠ group order {} (deficit {})",
            sum_of_squares,
            group.order(),
            group.order() as i64 - sum_of_squares as i64
        ));
    }
    if catalog.len() != group.class_count() {
        failures.push(format!("{} irreps but {} conjugacy classes", catalog.len(), group.class_count()));
    }
    for (i, r) in catalog.irreps().iter().enumerate() {
        if let Err(e) = r.check_homomorphism() {
            failures.push(format!("irrep {i}: {e}"));
        }
    }
    let chars = catalog.characters();
    for i in 0..chars.len() {
        for j in i..chars.len() {
            let ip = chars[i].inner(&chars[j], group);
            let want = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
            if ip != want {
                failures.push(format!("⟨χ_{i}, χ_{j}⟩ = {ip}, expected {want}"));
            }
        }
    }
    CatalogValidation {
        sum_of_squares,
        order: group.order(),
        irrep_count: catalog.len(),
        class_count: group.class_count(),
        failures,
    }
}

/// Multiplicities `k_i = ⟨χ_ρ, χ_i⟩`.
pub fn decompose_rep(rep: &Representation, catalog: &IrrepCatalog) -> Result<Vec<usize>> {
    if rep.group() != catalog.group() {
        return Err(Error::invalid("representation and catalog belong to different groups"));
    }
    let chi = rep.character();
    let mut out = Vec::with_capacity(catalog.len());
    for psi in catalog.characters() {
        let k = chi.inner(psi, catalog.group());
        match k.as_rational().and_then(|q| if q.is_integer() { q.to_i64() } else { None }) {
            Some(v) if v >= 0 => out.push(v as usize),
            _ => return Err(Error::invalid("catalog inconsistent with group")),
        }
    }
    let total: usize = out.iter().zip(catalog.degrees()).map(|(k, d)| k * d).sum();
    if total != rep.degree() {
        return Err(Error::invalid("catalog inconsistent with group"));
    }
    Ok(out)
}
