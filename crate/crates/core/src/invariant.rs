//! The graded invariant ring `R = Sym(V)^G`, computed one weight block at a time.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Cyclotomic, Rational};
use crate::group::{decompose_rep, regular_representation, FiniteGroup, IrrepCatalog, Representation};
use crate::linalg::{EchelonSpan, Matrix};
use crate::poly::{
    apply_to_monomial, monomial_count, monomials_of_degree, mul_monomials, variable_images, weight_add, weight_le,
    weight_sub, Exponents, LinearForm, VariableLayout, Weight, WeightScope,
};

/// Dimensions `dim R_0, …, dim R_D` from `(1/g) Σ_x 1/det(I − t ρ(x))`.
pub fn molien_series(rep: &Representation, max_degree: usize) -> Result<Vec<u64>> {
    let group = rep.group();
    let n = rep.degree();
    let mut total = vec![Cyclotomic::zero(); max_degree + 1];
    for members in group.classes() {
        let x = members[0];
        let power_sums: Vec<Cyclotomic> = (1..=n).map(|k| trace(rep.image(group.power(x, k)))).collect();
        // elementary symmetric functions of the eigenvalues via Newton's identities
        let mut e = vec![Cyclotomic::one()];
        for k in 1..=n {
            let mut acc = Cyclotomic::zero();
            for i in 1..=k {
                let term = e[k - i].mul(&power_sums[i - 1]);
                acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
            }
            e.push(acc.mul(&Cyclotomic::from_rational(Rational::new(1, k as i64))));
        }
        // det(I − tM) = Σ (−1)^k e_k t^k
        let q: Vec<Cyclotomic> = e.iter().enumerate().map(|(k, c)| if k % 2 == 0 { c.clone() } else { c.neg() }).collect();
        let mut inv = vec![Cyclotomic::one()];
        for j in 1..=max_degree {
            let mut acc = Cyclotomic::zero();
            for i in 1..=j.min(n) {
                acc = acc.sub(&q[i].mul(&inv[j - i]));
            }
            inv.push(acc);
        }
        let weight = Cyclotomic::from_integer(members.len() as i64);
        for (t, c) in total.iter_mut().zip(&inv) {
            *t = t.add(&c.mul(&weight));
        }
    }
    let scale = Cyclotomic::from_rational(Rational::new(1, group.order() as i64));
    total
        .into_iter()
        .map(|c| {
            let c = c.mul(&scale);
            c.as_rational()
                .filter(|q| q.is_integer() && !q.is_negative())
                .and_then(Rational::to_i64)
                .map(|v| v as u64)
                .ok_or_else(|| Error::inconsistency(format!("internal arithmetic inconsistency: Molien coefficient {c}")))
        })
        .collect()
}

fn trace(m: &Matrix<Cyclotomic>) -> Cyclotomic {
    (0..m.rows()).fold(Cyclotomic::zero(), |acc, i| acc.add(m.get(i, i)))
}

/// Basis of the invariants of one weight, in reduced echelon form over the
/// block's monomials. Coordinates of an invariant are its coefficients at the
/// pivot monomials.
#[derive(Debug)]
pub struct InvariantBlock {
    weight: Weight,
    monomials: Vec<Exponents>,
    basis: Vec<Vec<Cyclotomic>>,
    pivots: Vec<usize>,
    pivot_pos: HashMap<Exponents, usize>,
    support: Vec<Vec<(usize, Cyclotomic)>>,
}

impl InvariantBlock {
    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn degree(&self) -> usize {
        self.weight.iter().map(|&w| w as usize).sum()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    /// Basis rows as coefficient vectors over [`Self::monomials`].
    pub fn basis(&self) -> &[Vec<Cyclotomic>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Nonzero terms of basis row `i`.
    pub fn terms(&self, i: usize) -> impl Iterator<Item = (&Exponents, &Cyclotomic)> {
        self.support[i].iter().map(move |(k, c)| (&self.monomials[*k], c))
    }

    pub fn pivot_position(&self, m: &[u8]) -> Option<usize> {
        self.pivot_pos.get(m).copied()
    }
}

/// `Sym(V)^G` with lazily computed weight blocks.
pub struct InvariantRing {
    rep: Representation,
    layout: VariableLayout,
    actions: Vec<Vec<LinearForm>>,
    monomial_action: bool,
    basis_limit: usize,
    blocks: RwLock<HashMap<Weight, Arc<InvariantBlock>>>,
}

impl std::fmt::Debug for InvariantRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InvariantRing").field("degree", &self.rep.degree()).field("layout", &self.layout).finish()
    }
}

impl InvariantRing {
    pub fn new(rep: Representation, layout: VariableLayout, basis_limit: usize) -> Result<Self> {
        if layout.nvars() != rep.degree() {
            return Err(Error::invalid("variable layout does not match the representation degree"));
        }
        if !rep.images().iter().all(|m| layout.preserved_by(m)) {
            return Err(Error::invalid("group action does not preserve the weight grading"));
        }
        let actions: Vec<Vec<LinearForm>> = rep.images().iter().map(variable_images).collect();
        let monomial_action = actions.iter().all(|forms| forms.iter().all(|f| f.len() == 1));
        Ok(InvariantRing { rep, layout, actions, monomial_action, basis_limit, blocks: RwLock::new(HashMap::new()) })
    }

    /// Invariants of `rep` graded by degree alone.
    pub fn plain(rep: Representation, basis_limit: usize) -> Result<Self> {
        let layout = VariableLayout::single(rep.degree());
        Self::new(rep, layout, basis_limit)
    }

    /// Invariants of `⊕ V_i ⊗ C^{k_i}`, graded by the torus of `Π GL(C^{k_i})`.
    pub fn isotypic(catalog: &IrrepCatalog, multiplicities: &[usize], basis_limit: usize) -> Result<Self> {
        let rep = catalog.universal_rep(multiplicities)?;
        let layout = VariableLayout::isotypic(&catalog.degrees(), multiplicities);
        Self::new(rep, layout, basis_limit)
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.rep.group()
    }

    pub fn layout(&self) -> &VariableLayout {
        &self.layout
    }

    pub fn basis_limit(&self) -> usize {
        self.basis_limit
    }

    /// The scope that visits one weight per symmetry orbit.
    pub fn default_scope(&self) -> WeightScope {
        if self.layout.has_symmetry() {
            WeightScope::Dominant
        } else {
            WeightScope::All
        }
    }

    pub fn block(&self, w: &[u32]) -> Result<Arc<InvariantBlock>> {
        if let Some(b) = self.blocks.read().expect("block cache").get(w) {
            return Ok(b.clone());
        }
        let block = Arc::new(self.compute_block(w)?);
        let mut cache = self.blocks.write().expect("block cache");
        Ok(cache.entry(w.to_vec()).or_insert(block).clone())
    }

    fn compute_block(&self, w: &[u32]) -> Result<InvariantBlock> {
        let size = self.layout.block_size(w);
        if size > self.basis_limit as u128 {
            return Err(Error::limit(format!(
                "degree too large: weight block of {size} monomials exceeds limit {}",
                self.basis_limit
            )));
        }
        let monomials = self.layout.monomials_of_weight(w);
        let index: HashMap<&[u8], usize> = monomials.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let mut span = EchelonSpan::new(monomials.len());
        let mut covered = vec![false; monomials.len()];
        for (i, m) in monomials.iter().enumerate() {
            if covered[i] {
                continue;
            }
            // Reynolds image of m, up to the factor 1/g
            let mut row = vec![Cyclotomic::zero(); monomials.len()];
            for forms in &self.actions {
                for (target, c) in apply_to_monomial(forms, m) {
                    let k = index[target.as_slice()];
                    row[k] = row[k].add(&c);
                    if self.monomial_action {
                        covered[k] = true;
                    }
                }
            }
            span.insert(&row);
        }
        let basis = span.rows().to_vec();
        let pivots = span.pivots().to_vec();
        let pivot_pos = pivots.iter().enumerate().map(|(i, &p)| (monomials[p].clone(), i)).collect();
        let support = basis
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect())
            .collect();
        Ok(InvariantBlock { weight: w.to_vec(), monomials, basis, pivots, pivot_pos, support })
    }

    /// Coordinates of `a_i · b_j` in the basis of the block of weight `wt(a) + wt(b)`.
    pub fn product_coords(&self, a: &InvariantBlock, i: usize, b: &InvariantBlock, j: usize) -> Result<Vec<Cyclotomic>> {
        let target = self.block(&weight_add(&a.weight, &b.weight))?;
        let mut out = vec![Cyclotomic::zero(); target.dim()];
        for (m1, c1) in a.terms(i) {
            for (m2, c2) in b.terms(j) {
                if let Some(k) = target.pivot_position(&mul_monomials(m1, m2)) {
                    out[k] = out[k].add(&c1.mul(c2));
                }
            }
        }
        Ok(out)
    }

    /// Full product `a_i · b_j` as a coefficient vector over the target block's monomials.
    pub fn product_vector(&self, a: &InvariantBlock, i: usize, b: &InvariantBlock, j: usize) -> Result<Vec<Cyclotomic>> {
        let target = self.block(&weight_add(&a.weight, &b.weight))?;
        let index: HashMap<&[u8], usize> = target.monomials.iter().enumerate().map(|(k, m)| (m.as_slice(), k)).collect();
        let mut out = vec![Cyclotomic::zero(); target.monomials.len()];
        for (m1, c1) in a.terms(i) {
            for (m2, c2) in b.terms(j) {
                let k = index[mul_monomials(m1, m2).as_slice()];
                out[k] = out[k].add(&c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// `dim R_w` summed over all weights of degree `d`.
    pub fn degree_dim(&self, d: usize) -> Result<u64> {
        let scope = self.default_scope();
        let weights = self.layout.weights_of_degree(d, scope);
        let dims: Vec<u64> = weights
            .par_iter()
            .map(|w| Ok(self.block(w)?.dim() as u64 * self.orbit(w, scope)))
            .collect::<Result<Vec<_>>>()?;
        Ok(dims.iter().sum())
    }

    pub(crate) fn orbit(&self, w: &[u32], scope: WeightScope) -> u64 {
        match scope {
            WeightScope::All => 1,
            WeightScope::Dominant => self.layout.orbit_size(w),
        }
    }

    pub fn hilbert_function(&self, max_degree: usize) -> Result<Vec<u64>> {
        (0..=max_degree).map(|d| self.degree_dim(d)).collect()
    }

    /// Basis of `R_d` as columns over the graded-lex monomial basis of `Sym^d(V)`.
    pub fn invariant_basis(&self, d: usize) -> Result<Matrix<Cyclotomic>> {
        let n = self.rep.degree();
        let size = monomial_count(n, d);
        if size > self.basis_limit as u128 {
            return Err(Error::limit(format!("degree too large: {size} monomials exceeds limit {}", self.basis_limit)));
        }
        let full = monomials_of_degree(n, d);
        let index: HashMap<&[u8], usize> = full.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let mut columns = Vec::new();
        for w in self.layout.weights_of_degree(d, WeightScope::All) {
            let block = self.block(&w)?;
            for row in block.basis() {
                let mut col = vec![Cyclotomic::zero(); full.len()];
                for (m, c) in block.monomials().iter().zip(row) {
                    col[index[m.as_slice()]] = c.clone();
                }
                columns.push(col);
            }
        }
        Ok(Matrix::from_columns(columns, full.len()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorMode {
    Minimal,
    Full,
}

impl std::fmt::Display for GeneratorMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GeneratorMode::Minimal => "minimal",
            GeneratorMode::Full => "full",
        })
    }
}

/// Order in which complement candidates are tried when choosing minimal generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComplementOrder {
    Forward,
    Reverse,
}

/// One element of `E`: basis row `index` of the invariant block of `weight`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub degree: usize,
    pub weight: Weight,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSet {
    pub mode: GeneratorMode,
    pub elements: Vec<Generator>,
    pub beta_v: Option<usize>,
    pub beta_group: usize,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.elements.iter().map(|e| e.degree).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.elements.iter().map(|e| e.degree).max().unwrap_or(0)
    }

    /// Coefficient vector of element `i` over its block's monomials.
    pub fn coefficients(&self, ring: &InvariantRing, i: usize) -> Result<(Vec<Exponents>, Vec<Cyclotomic>)> {
        let e = &self.elements[i];
        let block = ring.block(&e.weight)?;
        Ok((block.monomials().to_vec(), block.basis()[e.index].clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalGenerators {
    pub degrees: Vec<usize>,
    pub generators: GeneratorSet,
    /// Largest degree with a new generator; 0 when `R = C`.
    pub beta_v: usize,
    pub stop: usize,
}

/// Chooses a complement of `(R_+ R_+)_w` in `R_w` for every weight of degree `≤ stop`.
pub fn minimal_generators(ring: &InvariantRing, stop: usize, order: ComplementOrder) -> Result<MinimalGenerators> {
    let layout = ring.layout();
    let mut chosen: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    let mut elements = Vec::new();
    for d in 1..=stop {
        let weights = layout.weights_of_degree(d, WeightScope::All);
        let lower: Vec<(Weight, Vec<usize>)> = chosen.iter().map(|(w, v)| (w.clone(), v.clone())).collect();
        let picks: Vec<Vec<usize>> = weights
            .par_iter()
            .map(|w| complement(ring, w, &lower, order))
            .collect::<Result<Vec<_>>>()?;
        for (w, pick) in weights.into_iter().zip(picks) {
            if pick.is_empty() {
                continue;
            }
            for &index in &pick {
                elements.push(Generator { degree: d, weight: w.clone(), index });
            }
            chosen.insert(w, pick);
        }
    }
    let degrees: Vec<usize> = elements.iter().map(|e| e.degree).collect();
    let beta_v = degrees.iter().copied().max().unwrap_or(0);
    let generators = GeneratorSet { mode: GeneratorMode::Minimal, elements, beta_v: Some(beta_v), beta_group: stop };
    Ok(MinimalGenerators { degrees, generators, beta_v, stop })
}

fn complement(ring: &InvariantRing, w: &[u32], lower: &[(Weight, Vec<usize>)], order: ComplementOrder) -> Result<Vec<usize>> {
    let block = ring.block(w)?;
    if block.dim() == 0 {
        return Ok(Vec::new());
    }
    let mut span = EchelonSpan::new(block.dim());
    'outer: for (u, gens) in lower {
        if !weight_le(u, w) {
            continue;
        }
        let ub = ring.block(u)?;
        let rest = ring.block(&weight_sub(w, u))?;
        for &e in gens {
            for r in 0..rest.dim() {
                span.insert(&ring.product_coords(&ub, e, &rest, r)?);
                if span.dim() == block.dim() {
                    break 'outer;
                }
            }
        }
    }
    let candidates: Vec<usize> = match order {
        ComplementOrder::Forward => (0..block.dim()).collect(),
        ComplementOrder::Reverse => (0..block.dim()).rev().collect(),
    };
    let mut picks = Vec::new();
    for i in candidates {
        if span.dim() == block.dim() {
            break;
        }
        let mut unit = vec![Cyclotomic::zero(); block.dim()];
        unit[i] = Cyclotomic::one();
        if span.insert(&unit) {
            picks.push(i);
        }
    }
    picks.sort_unstable();
    Ok(picks)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NoetherResult {
    pub value: usize,
    /// False when the value is the fallback `β ≤ g`.
    pub exact: bool,
}

/// The Noether number, from the regular representation when `g ≤ exact_limit`.
///
/// The regular representation is realized as `⊕ V_i ⊗ C^{d_i}`, which is
/// isomorphic to it and carries the weight grading.
pub fn noether_number(catalog: &IrrepCatalog, exact_limit: usize, basis_limit: usize) -> Result<NoetherResult> {
    let group = catalog.group();
    let g = group.order();
    if g > exact_limit {
        return Ok(NoetherResult { value: g, exact: false });
    }
    let degrees = catalog.degrees();
    let regular = decompose_rep(&regular_representation(group), catalog)?;
    if regular != degrees {
        return Err(Error::inconsistency("regular representation does not decompose as Σ d_i V_i"));
    }
    let ring = InvariantRing::isotypic(catalog, &degrees, basis_limit)?;
    let mg = minimal_generators(&ring, g, ComplementOrder::Forward)?;
    if mg.beta_v > g {
        return Err(Error::inconsistency("Noether bound violated"));
    }
    Ok(NoetherResult { value: mg.beta_v, exact: true })
}

/// The generator space `E`: a minimal complement, or all of `⊕_{1≤i≤β} R_i`.
pub fn build_e(ring: &InvariantRing, mode: GeneratorMode, beta: &NoetherResult, order: ComplementOrder) -> Result<GeneratorSet> {
    match mode {
        GeneratorMode::Minimal => {
            let mg = minimal_generators(ring, beta.value, order)?;
            if mg.beta_v > beta.value {
                return Err(Error::inconsistency("generator degree exceeds the Noether number"));
            }
            let mut set = mg.generators;
            set.beta_group = beta.value;
            Ok(set)
        }
        GeneratorMode::Full => {
            let mut elements = Vec::new();
            for d in 1..=beta.value {
                for w in ring.layout().weights_of_degree(d, WeightScope::All) {
                    let block = ring.block(&w)?;
                    for index in 0..block.dim() {
                        elements.push(Generator { degree: d, weight: w.clone(), index });
                    }
                }
            }
            Ok(GeneratorSet { mode, elements, beta_v: None, beta_group: beta.value })
        }
    }
}
