//! Graded `Tor^S_p(R, C)` as the homology of `R ⊗ Λ^• E`, one weight block at a time.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Cyclotomic;
use crate::invariant::{molien_series, GeneratorMode, GeneratorSet, InvariantBlock, InvariantRing};
use crate::linalg::Matrix;
use crate::poly::{weight_add, weight_le, weight_sub, Weight, WeightScope};

/// One summand `R_u ⊗ e_S` of a chain space.
#[derive(Debug, Clone)]
pub struct ChainTerm {
    /// Strictly increasing indices into `E`.
    pub subset: Vec<usize>,
    pub block: Arc<InvariantBlock>,
    /// Position of the first basis vector of this term.
    pub offset: usize,
}

/// Basis of `(R ⊗ Λ^p E)_w`.
#[derive(Debug, Clone)]
pub struct KoszulChainBasis {
    pub p: usize,
    pub weight: Weight,
    pub terms: Vec<ChainTerm>,
    pub dim: usize,
}

/// Homology of the Koszul complex at a single weight.
#[derive(Debug, Clone, PartialEq, Eq)]
struct WeightHomology {
    /// `tor[q - lo]` for `lo ≤ q ≤ hi`.
    tor: Vec<usize>,
    /// `chains[q]` for `0 ≤ q ≤ hi + 1` (entries below `lo - 1` are unused zeros).
    chains: Vec<usize>,
    /// `C_{hi+1} − rank ∂_{hi+1}`.
    top_cycles: usize,
    /// No `(hi+2)`-subset of `E` fits under the weight, so the complex ends at `hi + 1`.
    complete: bool,
}

/// The Koszul complex `R ⊗ Λ^• E` for a fixed ring and generator set.
pub struct KoszulComplex<'a> {
    ring: &'a InvariantRing,
    gens: &'a GeneratorSet,
    gen_blocks: Vec<Arc<InvariantBlock>>,
    scope: WeightScope,
    products: RwLock<HashMap<(Weight, usize, usize), Arc<Vec<Cyclotomic>>>>,
}

impl<'a> KoszulComplex<'a> {
    pub fn new(ring: &'a InvariantRing, gens: &'a GeneratorSet) -> Result<Self> {
        let gen_blocks = gens.elements.iter().map(|e| ring.block(&e.weight)).collect::<Result<Vec<_>>>()?;
        for (e, b) in gens.elements.iter().zip(&gen_blocks) {
            if e.index >= b.dim() || e.degree == 0 {
                return Err(Error::invalid("generator set does not match the invariant ring"));
            }
        }
        Ok(KoszulComplex { ring, gens, gen_blocks, scope: ring.default_scope(), products: RwLock::new(HashMap::new()) })
    }

    /// Restricts (or not) the weight enumeration to one weight per symmetry orbit.
    pub fn with_scope(mut self, scope: WeightScope) -> Self {
        self.scope = scope;
        self
    }

    pub fn scope(&self) -> WeightScope {
        self.scope
    }

    pub fn ring(&self) -> &InvariantRing {
        self.ring
    }

    pub fn generators(&self) -> &GeneratorSet {
        self.gens
    }

    /// Lemma-2 style ceiling `(β−1)·dim V + β·p` for the group Noether number β.
    pub fn ceiling(&self, p: usize) -> usize {
        let beta = self.gens.beta_group;
        beta.saturating_sub(1) * self.ring.rep().degree() + beta * p
    }

    pub fn guard(&self) -> usize {
        self.gens.beta_group
    }

    fn gen_weight(&self, k: usize) -> &Weight {
        &self.gens.elements[k].weight
    }

    /// Enumerates `p`-subsets of `E` whose weights sum to at most `w`.
    fn subsets(&self, p: usize, w: &[u32]) -> Vec<(Vec<usize>, Weight)> {
        let fits: Vec<usize> = (0..self.gens.len()).filter(|&k| weight_le(self.gen_weight(k), w)).collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(p);
        self.extend_subsets(&fits, 0, p, w.to_vec(), &mut cur, &mut out);
        out
    }

    fn extend_subsets(
        &self,
        fits: &[usize],
        start: usize,
        p: usize,
        left: Weight,
        cur: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Weight)>,
    ) {
        if cur.len() == p {
            out.push((cur.clone(), left));
            return;
        }
        for (pos, &k) in fits.iter().enumerate().skip(start) {
            if fits.len() - pos < p - cur.len() {
                break;
            }
            let wk = self.gen_weight(k);
            if weight_le(wk, &left) {
                cur.push(k);
                self.extend_subsets(fits, pos + 1, p, weight_sub(&left, wk), cur, out);
                cur.pop();
            }
        }
    }

    fn has_subset(&self, p: usize, w: &[u32]) -> bool {
        // cheap existence test: the enumeration is pruned by weight anyway
        !self.subsets(p, w).is_empty()
    }

    pub fn chain_basis(&self, p: usize, w: &[u32]) -> Result<KoszulChainBasis> {
        let mut terms = Vec::new();
        let mut offset = 0;
        for (subset, rest) in self.subsets(p, w) {
            let block = self.ring.block(&rest)?;
            if block.dim() == 0 {
                continue;
            }
            let dim = block.dim();
            terms.push(ChainTerm { subset, block, offset });
            offset += dim;
        }
        Ok(KoszulChainBasis { p, weight: w.to_vec(), terms, dim: offset })
    }

    /// `dim (Λ^p E)_w`: `p`-subsets of `E` with weights summing exactly to `w`.
    pub fn exterior_dim(&self, p: usize, w: &[u32]) -> usize {
        self.subsets(p, w).iter().filter(|(_, rest)| rest.iter().all(|&x| x == 0)).count()
    }

    /// `dim Tor_p` at the single weight `w`.
    pub fn tor_at_weight(&self, p: usize, w: &[u32]) -> Result<usize> {
        Ok(self.weight_homology(w, p, p)?.tor[0])
    }

    /// `dim (R ⊗ Λ^p E)_d`.
    pub fn chain_dim(&self, p: usize, d: usize) -> Result<u64> {
        let weights = self.ring.layout().weights_of_degree(d, self.scope);
        let dims = weights
            .par_iter()
            .map(|w| Ok(self.chain_basis(p, w)?.dim as u64 * self.ring.orbit(w, self.scope)))
            .collect::<Result<Vec<u64>>>()?;
        Ok(dims.iter().sum())
    }

    fn product(&self, block: &InvariantBlock, a: usize, k: usize) -> Result<Arc<Vec<Cyclotomic>>> {
        let key = (block.weight().clone(), a, k);
        if let Some(v) = self.products.read().expect("product cache").get(&key) {
            return Ok(v.clone());
        }
        let e = &self.gens.elements[k];
        let v = Arc::new(self.ring.product_coords(block, a, &self.gen_blocks[k], e.index)?);
        self.products.write().expect("product cache").insert(key, v.clone());
        Ok(v)
    }

    /// Matrix of `∂_p : (R ⊗ Λ^p E)_w → (R ⊗ Λ^{p−1} E)_w`,
    /// `r ⊗ e_{s_1} ∧ … ∧ e_{s_p} ↦ Σ_j (−1)^{j−1} (r·e_{s_j}) ⊗ e_{S∖s_j}`.
    pub fn differential(&self, source: &KoszulChainBasis, target: &KoszulChainBasis) -> Result<Matrix<Cyclotomic>> {
        assert_eq!(source.p, target.p + 1);
        assert_eq!(source.weight, target.weight);
        let index: HashMap<&[usize], &ChainTerm> = target.terms.iter().map(|t| (t.subset.as_slice(), t)).collect();
        let mut m: Matrix<Cyclotomic> = Matrix::zeros(target.dim, source.dim);
        for term in &source.terms {
            for a in 0..term.block.dim() {
                let col = term.offset + a;
                for (j, &k) in term.subset.iter().enumerate() {
                    let rest: Vec<usize> = term.subset.iter().copied().filter(|&x| x != k).collect();
                    let Some(t) = index.get(rest.as_slice()) else {
                        // the target block is zero, so is the product
                        continue;
                    };
                    debug_assert_eq!(*t.block.weight(), weight_add(term.block.weight(), self.gen_weight(k)));
                    let coords = self.product(&term.block, a, k)?;
                    for (i, c) in coords.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let v = if j % 2 == 0 { c.clone() } else { c.neg() };
                        let row = t.offset + i;
                        let cur = m.get(row, col).add(&v);
                        m.set(row, col, cur);
                    }
                }
            }
        }
        Ok(m)
    }

    /// Differential at the whole degree `d` for a degree-graded ring.
    pub fn differential_at_degree(&self, p: usize, d: usize) -> Result<Matrix<Cyclotomic>> {
        if self.ring.layout().colors() != 1 {
            return Err(Error::invalid("degree-level differential needs a single-colour layout; use weights"));
        }
        let w = vec![d as u32];
        let src = self.chain_basis(p, &w)?;
        let tgt = self.chain_basis(p - 1, &w)?;
        self.differential(&src, &tgt)
    }

    fn weight_homology(&self, w: &[u32], lo: usize, hi: usize) -> Result<WeightHomology> {
        let first = lo.saturating_sub(1);
        let mut chains = vec![0usize; hi + 2];
        let mut bases = Vec::new();
        for q in first..=hi + 1 {
            let b = self.chain_basis(q, w)?;
            chains[q] = b.dim;
            bases.push(b);
        }
        let basis = |q: usize| &bases[q - first];
        // rank[q] = rank ∂_q, with ∂_0 = 0
        let mut rank = vec![0usize; hi + 2];
        let mut prev: Option<Matrix<Cyclotomic>> = None;
        for q in lo.max(1)..=hi + 1 {
            let d = self.differential(basis(q), basis(q - 1))?;
            if let Some(p) = &prev {
                if d.rows() > 0 && d.cols() > 0 && p.cols() > 0 && !p.mul(&d).is_zero() {
                    return Err(Error::inconsistency(format!("∂² ≠ 0 at p = {q}, weight {w:?}")));
                }
            }
            rank[q] = d.rank();
            prev = Some(d);
        }
        let tor = (lo..=hi).map(|q| chains[q] - rank[q] - rank[q + 1]).collect();
        let top_cycles = chains[hi + 1] - rank[hi + 1];
        Ok(WeightHomology { tor, chains, top_cycles, complete: !self.has_subset(hi + 2, w) })
    }

    /// Dimensions of `Tor_q` at degree `d` for `lo ≤ q ≤ hi`.
    pub fn tor_range(&self, d: usize, lo: usize, hi: usize) -> Result<Vec<u64>> {
        Ok(self.degree_homology(d, lo, hi)?.tor)
    }

    fn degree_homology(&self, d: usize, lo: usize, hi: usize) -> Result<DegreeHomology> {
        let weights = self.ring.layout().weights_of_degree(d, self.scope);
        let parts = weights
            .par_iter()
            .map(|w| Ok((self.weight_homology(w, lo, hi)?, self.ring.orbit(w, self.scope))))
            .collect::<Result<Vec<_>>>()?;
        let mut out = DegreeHomology {
            tor: vec![0; hi + 1 - lo],
            chains: vec![0; hi + 2],
            top_cycles: 0,
            complete: true,
        };
        for (h, orbit) in parts {
            for (t, v) in out.tor.iter_mut().zip(&h.tor) {
                *t += *v as u64 * orbit;
            }
            for (c, v) in out.chains.iter_mut().zip(&h.chains) {
                *c += *v as u64 * orbit;
            }
            out.top_cycles += h.top_cycles as u64 * orbit;
            out.complete &= h.complete;
        }
        Ok(out)
    }

    /// `dim Tor_p(R, C)_d`.
    pub fn tor_dimension(&self, p: usize, d: usize) -> Result<u64> {
        Ok(self.tor_range(d, p, p)?[0])
    }

    /// Top degree of `Tor_p`, scanning up to the ceiling plus a guard band
    /// (or exactly up to `ceiling_override`).
    pub fn syzygy_degree(&self, p: usize, ceiling_override: Option<usize>) -> Result<SyzygyResult> {
        let ceiling = ceiling_override.unwrap_or_else(|| self.ceiling(p));
        let scan_to = if ceiling_override.is_some() { ceiling } else { ceiling + self.guard() };
        let dims = (0..=scan_to).into_par_iter().map(|d| self.tor_dimension(p, d)).collect::<Result<Vec<_>>>()?;
        let mut value = None;
        for (d, &dim) in dims.iter().enumerate() {
            if dim == 0 {
                continue;
            }
            if d > ceiling {
                return Err(Error::inconsistency(format!(
                    "ceiling violated — implementation bug or misread bound: Tor_{p} has dimension {dim} in degree {d} > {ceiling}"
                )));
            }
            value = Some(d);
        }
        Ok(SyzygyResult { p, value, mode: self.gens.mode, ceiling, scanned_to: scan_to })
    }

    /// All `Tor_{p,d}` for `p ≤ p_max` and `d` up to the ceiling of `p_max` plus the guard band.
    pub fn tor_table(&self, p_max: usize) -> Result<TorTable> {
        let ceilings: Vec<usize> = (0..=p_max).map(|p| self.ceiling(p)).collect();
        let scan_to = ceilings[p_max] + self.guard();
        let hilbert = molien_series(self.ring.rep(), scan_to)?;
        let degrees = self.gens.degrees();
        let rows = (0..=scan_to)
            .into_par_iter()
            .map(|d| self.degree_homology(d, 0, p_max))
            .collect::<Result<Vec<_>>>()?;
        let mut entries = BTreeMap::new();
        let mut euler_checked = Vec::new();
        for (d, h) in rows.iter().enumerate() {
            if h.chains[0] != hilbert[d] {
                return Err(Error::inconsistency(format!(
                    "Molien mismatch in degree {d}: {} invariants by Reynolds, {} by Molien",
                    h.chains[0], hilbert[d]
                )));
            }
            for (p, &dim) in h.tor.iter().enumerate() {
                if dim == 0 {
                    continue;
                }
                if p == 0 && d > 0 {
                    return Err(Error::inconsistency(format!("E does not generate R in degree {d}")));
                }
                if d > ceilings[p] {
                    return Err(Error::inconsistency(format!(
                        "ceiling violated — implementation bug or misread bound: Tor_{p} has dimension {dim} in degree {d} > {}",
                        ceilings[p]
                    )));
                }
                entries.insert((p, d), dim);
            }
            if h.complete {
                let chain_euler: i128 = alternating(&h.chains);
                let mut tor_euler: i128 = alternating(&h.tor);
                tor_euler += sign(p_max + 1) * h.top_cycles as i128;
                let expected = euler_from_series(&hilbert, &degrees, d);
                if chain_euler != expected || tor_euler != expected {
                    return Err(Error::inconsistency(format!(
                        "Euler characteristic mismatch in degree {d}: chains {chain_euler}, homology {tor_euler}, series {expected}"
                    )));
                }
                euler_checked.push(d);
            }
        }
        if entries.get(&(0, 0)) != Some(&1) {
            return Err(Error::inconsistency("Tor_0 in degree 0 is not one-dimensional"));
        }
        Ok(TorTable { mode: self.gens.mode, p_max, entries, ceilings, guard: self.guard(), scanned_to: scan_to, euler_checked })
    }
}

#[derive(Debug, Clone)]
struct DegreeHomology {
    tor: Vec<u64>,
    chains: Vec<u64>,
    top_cycles: u64,
    complete: bool,
}

fn sign(p: usize) -> i128 {
    if p % 2 == 0 {
        1
    } else {
        -1
    }
}

fn alternating(v: &[u64]) -> i128 {
    v.iter().enumerate().map(|(p, &x)| sign(p) * x as i128).sum()
}

/// Coefficient of `t^d` in `H_R(t) · Π_{e ∈ E} (1 − t^{deg e})`.
fn euler_from_series(hilbert: &[u64], degrees: &[usize], d: usize) -> i128 {
    let mut poly = vec![0i128; d + 1];
    poly[0] = 1;
    for &e in degrees {
        for i in (e..=d).rev() {
            poly[i] -= poly[i - e];
        }
    }
    (0..=d).map(|i| poly[i] * hilbert[d - i] as i128).sum()
}

/// Top degree of `Tor_p`; `value == None` means `Tor_p = 0` in every scanned degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyzygyResult {
    pub p: usize,
    pub value: Option<usize>,
    pub mode: GeneratorMode,
    pub ceiling: usize,
    pub scanned_to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorTable {
    pub mode: GeneratorMode,
    pub p_max: usize,
    /// Nonzero entries `(p, d) → dim Tor_{p,d}`.
    pub entries: BTreeMap<(usize, usize), u64>,
    /// Scan ceiling per `p`.
    pub ceilings: Vec<usize>,
    pub guard: usize,
    pub scanned_to: usize,
    /// Degrees where the Euler characteristic identity was verified.
    pub euler_checked: Vec<usize>,
}

impl TorTable {
    pub fn get(&self, p: usize, d: usize) -> u64 {
        self.entries.get(&(p, d)).copied().unwrap_or(0)
    }

    /// Top degree of `Tor_p` within the table.
    pub fn top_degree(&self, p: usize) -> Option<usize> {
        self.entries.keys().filter(|(q, _)| *q == p).map(|&(_, d)| d).max()
    }
}

/// Compares syzygy degrees with "none" as −∞.
pub fn syzygy_le(a: Option<usize>, b: Option<usize>) -> bool {
    match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => x <= y,
    }
}
