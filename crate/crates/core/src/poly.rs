//! Monomials, sparse polynomials, and the torus grading of polynomial variables.

use std::collections::HashMap;

use crate::field::Cyclotomic;
use crate::linalg::Matrix;

/// Exponent vector of a monomial.
pub type Exponents = Vec<u8>;

/// Multidegree with one coordinate per variable colour.
pub type Weight = Vec<u32>;

/// A linear form `Σ c_i x_i` stored sparsely.
pub type LinearForm = Vec<(usize, Cyclotomic)>;

pub type SparsePoly = HashMap<Exponents, Cyclotomic>;

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of monomials of degree `d` in `n` variables.
pub fn monomial_count(n: usize, d: usize) -> u128 {
    if n == 0 {
        return u128::from(d == 0);
    }
    binomial((n + d - 1) as u64, d as u64)
}

/// All monomials of degree `d` in `n` variables in graded lexicographic
/// order (`x_0^d` first).
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Exponents> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; n];
    fill(&mut cur, 0, d, &mut out);
    out
}

fn fill(cur: &mut Vec<u8>, pos: usize, left: usize, out: &mut Vec<Exponents>) {
    let n = cur.len();
    if n == 0 {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = left as u8;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e as u8;
        fill(cur, pos + 1, left - e, out);
    }
    cur[pos] = 0;
}

pub fn degree(m: &[u8]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

pub fn mul_monomials(a: &[u8], b: &[u8]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Images of the variables under `m`: variable `j` maps to column `j`.
pub fn variable_images(m: &Matrix<Cyclotomic>) -> Vec<LinearForm> {
    (0..m.cols())
        .map(|j| (0..m.rows()).filter(|&i| !m.get(i, j).is_zero()).map(|i| (i, m.get(i, j).clone())).collect())
        .collect()
}

/// Expands `Π_j (image_j)^{m_j}`.
pub fn apply_to_monomial(images: &[LinearForm], m: &[u8]) -> SparsePoly {
    if m.iter().zip(images).all(|(&e, f)| e == 0 || f.len() == 1) {
        let mut mono = vec![0u8; m.len()];
        let mut coeff = Cyclotomic::one();
        for (j, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let Some((i, c)) = images[j].first() else {
                return SparsePoly::new();
            };
            mono[*i] += e;
            coeff = coeff.mul(&c.pow(e as u32));
        }
        return SparsePoly::from([(mono, coeff)]);
    }
    let mut cur: SparsePoly = SparsePoly::from([(vec![0u8; m.len()], Cyclotomic::one())]);
    for (j, &e) in m.iter().enumerate() {
        for _ in 0..e {
            let mut next = SparsePoly::with_capacity(cur.len() * images[j].len());
            for (mono, c) in &cur {
                for (i, a) in &images[j] {
                    let mut mm = mono.clone();
                    mm[*i] += 1;
                    let entry = next.entry(mm).or_insert_with(Cyclotomic::zero);
                    *entry = entry.add(&c.mul(a));
                }
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
    }
    cur
}

/// Assignment of variables to colours, and of colours to interchangeable factors.
///
/// For `V = ⊕ V_i ⊗ C^{k_i}` the colour of a variable is its copy `(i, j)`;
/// the torus of `Π GL(C^{k_i})` scales each colour independently, and
/// permuting the colours of one factor is a symmetry commuting with the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableLayout {
    color_of: Vec<usize>,
    color_vars: Vec<Vec<usize>>,
    factors: Vec<Vec<usize>>,
}

/// Which weights of a given degree to visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightScope {
    All,
    /// One weight per orbit of the within-factor permutations (weakly decreasing per factor).
    Dominant,
}

impl VariableLayout {
    /// Every variable has the same colour: the plain degree grading.
    pub fn single(nvars: usize) -> Self {
        VariableLayout { color_of: vec![0; nvars], color_vars: vec![(0..nvars).collect()], factors: vec![vec![0]] }
    }

    /// Layout of `⊕_i V_i ⊗ C^{k_i}` with variables ordered by irrep `i`,
    /// copy `j`, then irrep basis index.
    pub fn isotypic(degrees: &[usize], multiplicities: &[usize]) -> Self {
        assert_eq!(degrees.len(), multiplicities.len());
        let mut color_of = Vec::new();
        let mut color_vars = Vec::new();
        let mut factors = Vec::new();
        for (&d, &k) in degrees.iter().zip(multiplicities) {
            let mut factor = Vec::new();
            for _ in 0..k {
                let color = color_vars.len();
                let vars: Vec<usize> = (color_of.len()..color_of.len() + d).collect();
                color_of.extend(std::iter::repeat_n(color, d));
                color_vars.push(vars);
                factor.push(color);
            }
            factors.push(factor);
        }
        VariableLayout { color_of, color_vars, factors }
    }

    pub fn nvars(&self) -> usize {
        self.color_of.len()
    }

    pub fn colors(&self) -> usize {
        self.color_vars.len()
    }

    pub fn color_of(&self, var: usize) -> usize {
        self.color_of[var]
    }

    pub fn factors(&self) -> &[Vec<usize>] {
        &self.factors
    }

    /// True when some factor has interchangeable colours.
    pub fn has_symmetry(&self) -> bool {
        self.factors.iter().any(|f| f.len() > 1)
    }

    pub fn weight_of(&self, m: &[u8]) -> Weight {
        let mut w = vec![0u32; self.colors()];
        for (v, &e) in m.iter().enumerate() {
            w[self.color_of[v]] += e as u32;
        }
        w
    }

    pub fn is_dominant(&self, w: &[u32]) -> bool {
        self.factors.iter().all(|f| f.windows(2).all(|p| w[p[0]] >= w[p[1]]))
    }

    /// Size of the orbit of `w` under within-factor permutations.
    pub fn orbit_size(&self, w: &[u32]) -> u64 {
        let mut total: u128 = 1;
        for f in &self.factors {
            let mut vals: Vec<u32> = f.iter().map(|&c| w[c]).collect();
            vals.sort_unstable();
            let mut count = multinomial_top(f.len());
            let mut i = 0;
            while i < vals.len() {
                let j = vals[i..].iter().take_while(|&&x| x == vals[i]).count();
                count /= multinomial_top(j);
                i += j;
            }
            total *= count;
        }
        total as u64
    }

    /// The dominant representative of the orbit of `w`.
    pub fn dominant_of(&self, w: &[u32]) -> Weight {
        let mut out = w.to_vec();
        for f in &self.factors {
            let mut vals: Vec<u32> = f.iter().map(|&c| w[c]).collect();
            vals.sort_unstable_by(|a, b| b.cmp(a));
            for (&c, v) in f.iter().zip(vals) {
                out[c] = v;
            }
        }
        out
    }

    /// Weights of total degree `d` (lexicographically descending), restricted
    /// to colours that carry variables.
    pub fn weights_of_degree(&self, d: usize, scope: WeightScope) -> Vec<Weight> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.colors()];
        self.compose(&mut cur, 0, d as u32, &mut out);
        if scope == WeightScope::Dominant {
            out.retain(|w| self.is_dominant(w));
        }
        out
    }

    fn compose(&self, cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Weight>) {
        if pos == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let cap = if self.color_vars[pos].is_empty() { 0 } else { left };
        for e in (0..=cap).rev() {
            cur[pos] = e;
            self.compose(cur, pos + 1, left - e, out);
        }
        cur[pos] = 0;
    }

    /// Number of monomials of weight `w`.
    pub fn block_size(&self, w: &[u32]) -> u128 {
        w.iter().zip(&self.color_vars).map(|(&e, vars)| monomial_count(vars.len(), e as usize)).product()
    }

    /// Monomials of weight `w` in graded lexicographic order.
    pub fn monomials_of_weight(&self, w: &[u32]) -> Vec<Exponents> {
        let mut out: Vec<Exponents> = vec![vec![0u8; self.nvars()]];
        for (c, vars) in self.color_vars.iter().enumerate() {
            let parts = monomials_of_degree(vars.len(), w[c] as usize);
            let mut next = Vec::with_capacity(out.len() * parts.len());
            for base in &out {
                for part in &parts {
                    let mut m = base.clone();
                    for (&v, &e) in vars.iter().zip(part) {
                        m[v] = e;
                    }
                    next.push(m);
                }
            }
            out = next;
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Checks that `m` maps every variable into the span of its own colour.
    pub fn preserved_by(&self, m: &Matrix<Cyclotomic>) -> bool {
        (0..m.rows()).all(|r| (0..m.cols()).all(|c| m.get(r, c).is_zero() || self.color_of[r] == self.color_of[c]))
    }
}

fn multinomial_top(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Componentwise `a ≤ b`.
pub fn weight_le(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn weight_sub(a: &[u32], b: &[u32]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn weight_add(a: &[u32], b: &[u32]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let m = monomials_of_degree(2, 2);
        assert_eq!(m, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(0, 0), vec![Vec::<u8>::new()]);
        assert!(monomials_of_degree(0, 1).is_empty());
        assert_eq!(monomial_count(8, 8), 6435);
    }

    #[test]
    fn isotypic_layout_weights() {
        // C^2 ⊗ triv ⊕ C^1 ⊗ (2-dim irrep)
        let l = VariableLayout::isotypic(&[1, 2], &[2, 1]);
        assert_eq!(l.nvars(), 4);
        assert_eq!(l.colors(), 3);
        assert_eq!(l.factors(), &[vec![0, 1], vec![2]]);
        assert_eq!(l.weight_of(&[1, 0, 1, 1]), vec![1, 0, 2]);
        assert_eq!(l.block_size(&[1, 1, 2]), 3);
        assert_eq!(l.monomials_of_weight(&[0, 1, 1]), vec![vec![0, 1, 1, 0], vec![0, 1, 0, 1]]);
        let all = l.weights_of_degree(2, WeightScope::All);
        assert_eq!(all.len(), 6);
        let dom = l.weights_of_degree(2, WeightScope::Dominant);
        let total: u64 = dom.iter().map(|w| l.orbit_size(w)).sum();
        assert_eq!(total, 6);
        assert_eq!(l.dominant_of(&[0, 2, 0]), vec![2, 0, 0]);
    }

    #[test]
    fn monomial_action_expands_products() {
        // x ↦ x + y, y ↦ y
        let m = Matrix::from_i64(&[&[1, 0], &[1, 1]]);
        let imgs = variable_images(&m);
        let p = apply_to_monomial(&imgs, &[2, 0]);
        assert_eq!(p.len(), 3);
        assert_eq!(p[&vec![1, 1]], Cyclotomic::from_integer(2));
    }
}
