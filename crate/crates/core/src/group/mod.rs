//! Finite groups given by generators, their representations and irreducible catalogs.

pub mod builtin;
mod catalog;
mod rep;

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::Arc;

use num_integer::Integer;

pub use catalog::{decompose_rep, validate_irrep_catalog, CatalogValidation, IrrepCatalog};
pub use rep::{DEFAULT_BASIS_LIMIT, regular_representation, reynolds_matrix, sym_power_action, Character, Representation};

use crate::error::{Error, Result};
use crate::field::{Cyclotomic, CyclotomicField, Rational};
use crate::linalg::Matrix;

/// Largest group order accepted by default.
pub const DEFAULT_ORDER_LIMIT: usize = 128;

/// Groups up to this order get exhaustive associativity and homomorphism checks.
pub const EXHAUSTIVE_CHECK_ORDER: usize = 64;

/// A finite group stored by its multiplication table.
///
/// Element 0 is the identity; the remaining elements are in breadth-first
/// discovery order from the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul_table: Vec<usize>,
    inverses: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    element_orders: Vec<usize>,
    generators: Vec<usize>,
    /// `words[x] = Some((parent, k))` means `x = parent · generators[k]`.
    words: Vec<Option<(usize, usize)>>,
}

/// Generators of a group, either as permutations or as invertible matrices.
#[derive(Debug, Clone)]
pub enum Generators {
    /// Permutations of `0..n` in one-line notation: `p[i]` is the image of `i`.
    Permutations(Vec<Vec<usize>>),
    Matrices(Vec<Matrix<Cyclotomic>>),
}

/// A group produced by closure, with the representation it was generated in.
#[derive(Debug, Clone)]
pub struct GeneratedGroup {
    pub group: Arc<FiniteGroup>,
    pub natural: Representation,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Index of `a^k`.
    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k % self.element_orders[a]).fold(0, |acc, _| self.mul(acc, a))
    }

    /// The lcm of the element orders.
    pub fn exponent(&self) -> usize {
        self.element_orders.iter().fold(1, |acc, &o| acc.lcm(&o))
    }

    /// Extends images of the generators to every element along the discovery words.
    pub(crate) fn extend_along_words<T: Clone>(&self, identity: T, gen_images: &[T], mul: impl Fn(&T, &T) -> T) -> Vec<T> {
        let mut out: Vec<T> = Vec::with_capacity(self.order);
        for x in 0..self.order {
            let img = match self.words[x] {
                None => identity.clone(),
                Some((parent, k)) => mul(&out[parent], &gen_images[k]),
            };
            out.push(img);
        }
        out
    }

    /// Builds a group from a complete multiplication table with identity 0,
    /// checking the group axioms.
    pub fn from_table(order: usize, mul_table: Vec<usize>, generators: Vec<usize>, words: Vec<Option<(usize, usize)>>) -> Result<Self> {
        if mul_table.len() != order * order || order == 0 {
            return Err(Error::invalid("multiplication table has the wrong size"));
        }
        if mul_table.iter().any(|&x| x >= order) {
            return Err(Error::invalid("multiplication table is not closed"));
        }
        let m = |a: usize, b: usize| mul_table[a * order + b];
        for a in 0..order {
            if m(0, a) != a || m(a, 0) != a {
                return Err(Error::invalid("element 0 is not an identity"));
            }
        }
        let mut inverses = vec![usize::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| m(a, b) == 0 && m(b, a) == 0) {
                Some(b) => inverses[a] = b,
                None => return Err(Error::invalid(format!("element {a} has no inverse"))),
            }
        }
        let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if order <= EXHAUSTIVE_CHECK_ORDER {
            Box::new((0..order).flat_map(move |a| (0..order).flat_map(move |b| (0..order).map(move |c| (a, b, c)))))
        } else {
            // deterministic sample of triples
            Box::new((0..4096usize).map(move |i| {
                let h = i.wrapping_mul(2654435761);
                (h % order, (h / order) % order, (h / (order * order)) % order)
            }))
        };
        for (a, b, c) in triples {
            if m(m(a, b), c) != m(a, m(b, c)) {
                return Err(Error::invalid(format!("associativity fails on ({a}, {b}, {c})")));
            }
        }
        let element_orders = (0..order)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != 0 {
                    x = m(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for x in 0..order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members: Vec<usize> = (0..order).map(|g| m(m(g, x), inverses[g])).collect();
            members.sort_unstable();
            members.dedup();
            for &y in &members {
                class_of[y] = id;
            }
            classes.push(members);
        }
        Ok(FiniteGroup { order, mul_table, inverses, class_of, classes, element_orders, generators, words })
    }
}

fn closure<E, K: Hash + Eq>(
    identity: E,
    gens: &[E],
    mul: impl Fn(&E, &E) -> E,
    key: impl Fn(&E) -> K,
    limit: usize,
) -> Result<(Vec<E>, Vec<Option<(usize, usize)>>, HashMap<K, usize>)> {
    let mut index = HashMap::new();
    index.insert(key(&identity), 0usize);
    let mut elems = vec![identity];
    let mut words = vec![None];
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (k, g) in gens.iter().enumerate() {
            let y = mul(&elems[x], g);
            let ky = key(&y);
            if !index.contains_key(&ky) {
                if elems.len() == limit {
                    return Err(Error::limit(format!("order limit exceeded (limit {limit})")));
                }
                index.insert(ky, elems.len());
                queue.push_back(elems.len());
                elems.push(y);
                words.push(Some((x, k)));
            }
        }
    }
    Ok((elems, words, index))
}

fn table_from<E, K: Hash + Eq>(elems: &[E], index: &HashMap<K, usize>, mul: impl Fn(&E, &E) -> E, key: impl Fn(&E) -> K) -> Vec<usize> {
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for a in elems {
        for b in elems {
            table.push(index[&key(&mul(a, b))]);
        }
    }
    table
}

/// Breadth-first closure of the generators under multiplication.
pub fn generate_group(generators: &Generators, order_limit: usize) -> Result<GeneratedGroup> {
    match generators {
        Generators::Permutations(perms) => generate_permutation_group(perms, order_limit),
        Generators::Matrices(mats) => generate_matrix_group(mats, order_limit),
    }
}

fn generate_permutation_group(perms: &[Vec<usize>], limit: usize) -> Result<GeneratedGroup> {
    let n = perms.first().map_or(1, Vec::len).max(1);
    for p in perms {
        if p.len() != n {
            return Err(Error::invalid("permutation generators act on different point counts"));
        }
        let mut seen = vec![false; n];
        for &x in p {
            if x >= n || seen[x] {
                return Err(Error::invalid("generator not invertible: not a permutation"));
            }
            seen[x] = true;
        }
    }
    // (a·b)(x) = a(b(x))
    let compose = |a: &Vec<usize>, b: &Vec<usize>| b.iter().map(|&x| a[x]).collect::<Vec<_>>();
    let identity: Vec<usize> = (0..n).collect();
    let (elems, words, index) = closure(identity, perms, compose, Clone::clone, limit)?;
    let table = table_from(&elems, &index, compose, Clone::clone);
    let gens = perms.iter().map(|p| index[p]).collect();
    let group = Arc::new(FiniteGroup::from_table(elems.len(), table, gens, words)?);
    let images = elems.iter().map(|p| permutation_matrix(p)).collect();
    let natural = Representation::new_unchecked(group.clone(), n, images);
    Ok(GeneratedGroup { group, natural })
}

/// `P e_x = e_{p(x)}`, so composition of permutations matches matrix products.
pub fn permutation_matrix(p: &[usize]) -> Matrix<Cyclotomic> {
    let n = p.len();
    let mut m = Matrix::zeros(n, n);
    for (x, &y) in p.iter().enumerate() {
        m.set(y, x, Cyclotomic::one());
    }
    m
}

fn generate_matrix_group(mats: &[Matrix<Cyclotomic>], limit: usize) -> Result<GeneratedGroup> {
    let n = mats.first().map_or(0, Matrix::rows);
    for m in mats {
        if m.rows() != n || m.cols() != n {
            return Err(Error::invalid("matrix generators must be square of equal size"));
        }
        if m.rank() != n {
            return Err(Error::invalid("generator not invertible"));
        }
    }
    let conductor = mats
        .iter()
        .flat_map(|m| m.entries().iter().map(Cyclotomic::conductor))
        .fold(1u32, |acc, c| acc.lcm(&c));
    let field = CyclotomicField::with_limit(conductor, u32::MAX)?;
    let key = |m: &Matrix<Cyclotomic>| -> Vec<Rational> { m.entries().iter().flat_map(|e| e.lift_coeffs(&field)).collect() };
    let (elems, words, index) = closure(Matrix::identity(n), mats, |a, b| a.mul(b), key, limit)?;
    let table = table_from(&elems, &index, |a, b| a.mul(b), key);
    let gens = mats.iter().map(|m| index[&key(m)]).collect();
    let group = Arc::new(FiniteGroup::from_table(elems.len(), table, gens, words)?);
    let natural = Representation::new_unchecked(group.clone(), n, elems);
    Ok(GeneratedGroup { group, natural })
}
