use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::invalid(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_composition(parts: &[usize]) -> Self {
        let mut v: Vec<usize> = parts.iter().copied().filter(|&x| x > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Row `i` (zero past the end).
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Dominance order `self ⊵ other` (sizes must agree).
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let n = self.rows().max(other.rows());
        let (mut a, mut b) = (0, 0);
        for i in 0..n {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Young diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.rows() <= self.rows() && (0..other.rows()).all(|i| other.part(i) <= self.part(i))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Ord for Partition {
    /// Reverse lexicographic: larger first parts come first.
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Partitions of `k` in reverse lexicographic order, optionally with at most `max_rows` rows.
pub fn partitions_of(k: usize, max_rows: Option<usize>) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    gen_partitions(k, k, max_rows.unwrap_or(usize::MAX), &mut cur, &mut out);
    out
}

fn gen_partitions(left: usize, cap: usize, rows: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if left == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    if cur.len() == rows {
        return;
    }
    for first in (1..=cap.min(left)).rev() {
        cur.push(first);
        gen_partitions(left - first, first, rows, cur, out);
        cur.pop();
    }
}

/// Number of semistandard tableaux of shape `λ` and content `μ`.
pub fn kostka_number(lambda: &Partition, mu: &[usize]) -> Result<u64> {
    if lambda.size() != mu.iter().sum::<usize>() {
        return Err(Error::invalid("kostka_number: |λ| ≠ |μ|"));
    }
    let mut memo = HashMap::new();
    Ok(kostka_rec(lambda.parts(), mu, &mut memo))
}

/// Kostka numbers are symmetric in the content, so it is sorted before lookup.
pub(crate) fn kostka_cached(lambda: &Partition, mu: &Partition, memo: &mut HashMap<(Vec<usize>, Vec<usize>), u64>) -> u64 {
    if lambda.size() != mu.size() || !lambda.dominates(mu) {
        return 0;
    }
    kostka_rec(lambda.parts(), mu.parts(), memo)
}

fn kostka_rec(lambda: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, Vec<usize>), u64>) -> u64 {
    let Some((&last, rest)) = mu.split_last() else {
        return u64::from(lambda.iter().all(|&x| x == 0));
    };
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    // remove a horizontal strip of size `last` holding the largest entry
    let mut total = 0;
    let mut inner = vec![0usize; lambda.len()];
    strips(lambda, 0, last, &mut inner, &mut |shape| {
        let trimmed: Vec<usize> = shape.iter().copied().take_while(|&x| x > 0).collect();
        total += kostka_rec(&trimmed, rest, memo);
    });
    memo.insert(key, total);
    total
}

/// Calls `f` with every `ν ⊆ λ` such that `λ/ν` is a horizontal strip of size `r`.
fn strips(lambda: &[usize], i: usize, r: usize, inner: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if i == lambda.len() {
        if r == 0 {
            f(inner);
        }
        return;
    }
    let lower = lambda.get(i + 1).copied().unwrap_or(0);
    let max_remove = lambda[i] - lower;
    for take in 0..=max_remove.min(r) {
        inner[i] = lambda[i] - take;
        strips(lambda, i + 1, r - take, inner, f);
    }
}

/// Littlewood–Richardson coefficient `c^λ_{μν}`: LR tableaux of shape `λ/μ` and content `ν`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() != mu.size() + nu.size() || !lambda.contains(mu) {
        return 0;
    }
    let rows = lambda.rows();
    // cells in reading order: rows top to bottom, each right to left
    let mut cells = Vec::new();
    for r in 0..rows {
        for c in (mu.part(r)..lambda.part(r)).rev() {
            cells.push((r, c));
        }
    }
    let mut filling: HashMap<(usize, usize), usize> = HashMap::new();
    let mut counts = vec![0usize; nu.rows() + 1];
    lr_fill(&cells, 0, mu, nu, &mut filling, &mut counts)
}

fn lr_fill(
    cells: &[(usize, usize)],
    k: usize,
    mu: &Partition,
    nu: &Partition,
    filling: &mut HashMap<(usize, usize), usize>,
    counts: &mut Vec<usize>,
) -> u64 {
    if k == cells.len() {
        return 1;
    }
    let (r, c) = cells[k];
    let mut total = 0;
    // weakly increasing along rows: bounded by the entry to the right
    let hi = filling.get(&(r, c + 1)).copied().unwrap_or(nu.rows());
    // strictly increasing down columns: above the entry above
    let lo = if r > 0 && c >= mu.part(r - 1) { filling.get(&(r - 1, c)).copied().map_or(1, |v| v + 1) } else { 1 };
    for v in lo..=hi {
        if counts[v] >= nu.part(v - 1) {
            continue;
        }
        if v > 1 && counts[v] + 1 > counts[v - 1] {
            continue;
        }
        counts[v] += 1;
        filling.insert((r, c), v);
        total += lr_fill(cells, k + 1, mu, nu, filling, counts);
        filling.remove(&(r, c));
        counts[v] -= 1;
    }
    total
}

/// `dim S_λ(C^k)` by the hook-content formula.
pub fn schur_dim(lambda: &Partition, k: usize) -> u64 {
    if lambda.rows() > k {
        return 0;
    }
    let conj: Vec<usize> = (0..lambda.part(0)).map(|c| lambda.parts().iter().filter(|&&p| p > c).count()).collect();
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for (r, &len) in lambda.parts().iter().enumerate() {
        for c in 0..len {
            num *= (k + c - r) as u64;
            den *= ((len - c - 1) + (conj[c] - r - 1) + 1) as u64;
        }
    }
    (num / den).to_u64().expect("schur dimension fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partitions_of(4, None).len(), 5);
        assert_eq!(partitions_of(4, Some(2)), vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
        assert_eq!(partitions_of(0, None), vec![Partition::empty()]);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka_number(&p(&[2, 1]), &[2, 1]).unwrap(), 1);
        assert_eq!(kostka_number(&p(&[2, 1]), &[1, 1, 1]).unwrap(), 2);
        assert_eq!(kostka_number(&p(&[1, 1]), &[2]).unwrap(), 0);
        assert!(kostka_number(&p(&[1]), &[2]).is_err());
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[1])), 0);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[1, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 2]), &p(&[2, 1]), &p(&[1])), 1);
        assert_eq!(lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
    }

    #[test]
    fn schur_dim_examples() {
        assert_eq!(schur_dim(&p(&[1, 1]), 2), 1);
        assert_eq!(schur_dim(&p(&[2]), 2), 3);
        assert_eq!(schur_dim(&p(&[1, 1, 1]), 2), 0);
        assert_eq!(schur_dim(&p(&[2, 1]), 3), 8);
        assert_eq!(schur_dim(&Partition::empty(), 5), 1);
    }

    #[test]
    fn dominance() {
        assert!(p(&[3, 1]).dominates(&p(&[2, 2])));
        assert!(!p(&[2, 2]).dominates(&p(&[3, 1])));
        assert!(!p(&[3, 3]).dominates(&p(&[4, 1, 1])));
        assert!(!p(&[4, 1, 1]).dominates(&p(&[3, 3])));
    }
}
