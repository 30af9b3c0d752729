use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::partition::{kostka_cached, schur_dim, Partition};
use crate::error::{Error, Result};
use crate::poly::{VariableLayout, Weight, WeightScope};
use crate::syzygy::KoszulComplex;

/// A graded piece whose torus weights are measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    /// `R_d`.
    Invariants { d: usize },
    /// `(Λ^p E)_e`.
    Exterior { p: usize, e: usize },
    /// `Tor_{p,d}`.
    Tor { p: usize, d: usize },
}

/// Dimension of each weight space of `space`.
///
/// With [`WeightScope::Dominant`] only dominant weights are listed, and a few
/// non-dominant weights are compared against their dominant representatives.
pub fn weight_decomposition(complex: &KoszulComplex, space: Space, scope: WeightScope) -> Result<BTreeMap<Weight, u64>> {
    let layout = complex.ring().layout();
    let degree = match space {
        Space::Invariants { d } | Space::Tor { d, .. } => d,
        Space::Exterior { e, .. } => e,
    };
    let weights = layout.weights_of_degree(degree, scope);
    let dims = weights.par_iter().map(|w| weight_dim(complex, space, w)).collect::<Result<Vec<_>>>()?;
    let map: BTreeMap<Weight, u64> = weights.into_iter().zip(dims).filter(|(_, d)| *d > 0).collect();
    if scope == WeightScope::Dominant {
        for (w, &dim) in map.iter().take(3) {
            let mut flipped = w.clone();
            for f in layout.factors() {
                let vals: Vec<u32> = f.iter().map(|&c| w[c]).collect();
                for (&c, v) in f.iter().zip(vals.into_iter().rev()) {
                    flipped[c] = v;
                }
            }
            if weight_dim(complex, space, &flipped)? != dim {
                return Err(Error::inconsistency(format!("weight data not symmetric at {w:?}")));
            }
        }
    }
    Ok(map)
}

fn weight_dim(complex: &KoszulComplex, space: Space, w: &[u32]) -> Result<u64> {
    Ok(match space {
        Space::Invariants { .. } => complex.ring().block(w)?.dim() as u64,
        Space::Exterior { p, .. } => complex.exterior_dim(p, w) as u64,
        Space::Tor { p, .. } => complex.tor_at_weight(p, w)? as u64,
    })
}

/// Multiplicities of `⊗_i S_{λ^(i)}(C^{k_i})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurDecomposition {
    pub factor_dims: Vec<usize>,
    pub multiplicities: BTreeMap<Vec<Partition>, u64>,
}

impl SchurDecomposition {
    /// `Σ mult · Π_i dim S_{λ^(i)}(C^{k_i})`.
    pub fn dimension(&self) -> u128 {
        self.multiplicities
            .iter()
            .map(|(lams, &m)| {
                m as u128 * lams.iter().zip(&self.factor_dims).map(|(l, &k)| schur_dim(l, k) as u128).product::<u128>()
            })
            .sum()
    }

    /// Largest number of rows in factor `i` over the support (`ℓ_i`).
    pub fn max_rows(&self, i: usize) -> usize {
        self.multiplicities.keys().map(|lams| lams[i].rows()).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }
}

fn split(layout: &VariableLayout, w: &[u32]) -> Vec<Partition> {
    layout
        .factors()
        .iter()
        .map(|f| Partition::from_composition(&f.iter().map(|&c| w[c] as usize).collect::<Vec<_>>()))
        .collect()
}

/// Recovers Schur multiplicities from dominant weight dimensions by
/// back-substitution through the unitriangular Kostka matrix.
pub fn schur_multiplicities(weights: &BTreeMap<Weight, u64>, layout: &VariableLayout) -> Result<SchurDecomposition> {
    let factor_dims: Vec<usize> = layout.factors().iter().map(Vec::len).collect();
    let mut dominant: Vec<(Vec<Partition>, u64)> = weights
        .iter()
        .filter(|(w, _)| layout.is_dominant(w))
        .map(|(w, &d)| (split(layout, w), d))
        .collect();
    // reverse-lex per factor refines dominance, so larger weights come first
    dominant.sort_by(|a, b| a.0.cmp(&b.0));
    let mut memo = HashMap::new();
    let mut found: Vec<(Vec<Partition>, u64)> = Vec::new();
    for (mu, dim) in dominant {
        let mut covered: u64 = 0;
        for (lam, m) in &found {
            let k: u64 = lam.iter().zip(&mu).map(|(l, u)| kostka_cached(l, u, &mut memo)).product();
            covered += k * m;
        }
        if covered > dim {
            return Err(Error::inconsistency(format!("weight data inconsistent at {mu:?}: negative multiplicity")));
        }
        if covered < dim {
            found.push((mu, dim - covered));
        }
    }
    Ok(SchurDecomposition { factor_dims, multiplicities: found.into_iter().collect() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowBoundReport {
    pub bounds: Vec<usize>,
    pub max_rows: Vec<usize>,
    pub witnesses: Vec<Vec<Partition>>,
    pub passed: bool,
}

/// Checks that every `λ^(i)` in the support has at most `b_i` rows.
pub fn row_bound_check(decomp: &SchurDecomposition, bounds: &[usize]) -> Result<RowBoundReport> {
    if bounds.len() != decomp.factor_dims.len() {
        return Err(Error::invalid("one row bound per factor required"));
    }
    if decomp.factor_dims.iter().zip(bounds).any(|(&k, &b)| k < b + 1) {
        return Err(Error::invalid("factor dimension too small to certify bound"));
    }
    let witnesses: Vec<Vec<Partition>> = decomp
        .multiplicities
        .keys()
        .filter(|lams| lams.iter().zip(bounds).any(|(l, &b)| l.rows() > b))
        .cloned()
        .collect();
    Ok(RowBoundReport {
        bounds: bounds.to_vec(),
        max_rows: (0..bounds.len()).map(|i| decomp.max_rows(i)).collect(),
        passed: witnesses.is_empty(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(k: usize) -> VariableLayout {
        VariableLayout::isotypic(&[1], &[k])
    }

    #[test]
    fn sym2_of_plane() {
        let w = BTreeMap::from([(vec![2, 0], 1), (vec![1, 1], 1), (vec![0, 2], 1)]);
        let d = schur_multiplicities(&w, &single(2)).unwrap();
        assert_eq!(d.multiplicities, BTreeMap::from([(vec![Partition::new(vec![2]).unwrap()], 1)]));
        assert_eq!(d.dimension(), 3);
    }

    #[test]
    fn plane_tensor_plane() {
        let w = BTreeMap::from([(vec![2, 0], 1), (vec![1, 1], 2), (vec![0, 2], 1)]);
        let d = schur_multiplicities(&w, &single(2)).unwrap();
        assert_eq!(d.multiplicities.len(), 2);
        assert_eq!(d.dimension(), 4);
    }

    #[test]
    fn empty_and_inconsistent() {
        let d = schur_multiplicities(&BTreeMap::new(), &single(2)).unwrap();
        assert!(d.is_empty());
        assert!(row_bound_check(&d, &[0]).unwrap().passed);
        let neg = BTreeMap::from([(vec![3, 0], 2), (vec![2, 1], 1)]);
        assert!(matches!(schur_multiplicities(&neg, &single(2)), Err(Error::Inconsistency(_))));
    }

    #[test]
    fn row_bound_needs_certifying_dimension() {
        let d = SchurDecomposition { factor_dims: vec![1], multiplicities: BTreeMap::new() };
        assert!(row_bound_check(&d, &[1]).is_err());
    }
}
