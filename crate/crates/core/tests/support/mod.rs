//! Test-only oracles and structural checks shared by the integration tests
//! and the acceptance target.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use syzlab_core::group::{reynolds_matrix, sym_power_action};
use syzlab_core::invariant::{build_e, noether_number, ComplementOrder, GeneratorMode, InvariantRing, NoetherResult};
use syzlab_core::schur::{kostka_number, lr_coefficient, partitions_of, schur_dim, schur_multiplicities};
use syzlab_core::{builtin, molien_series, KoszulComplex, Partition, VariableLayout};

pub const LIMIT: usize = 20000;

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Diagonal action of ℤ/N: variable i is scaled by ζ^{weights[i]}.
pub struct DiagonalAction {
    pub modulus: u32,
    pub weights: Vec<u32>,
}

impl DiagonalAction {
    pub fn invariant(&self, m: &[u8]) -> bool {
        m.iter().zip(&self.weights).map(|(&e, &w)| e as u32 * w).sum::<u32>() % self.modulus == 0
    }

    pub fn monomials(&self, d: usize) -> Vec<Vec<u8>> {
        fn rec(n: usize, d: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if cur.len() == n - 1 {
                cur.push(d as u8);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for e in 0..=d {
                cur.push(e as u8);
                rec(n, d - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self.weights.len(), d, &mut Vec::new(), &mut out);
        out.retain(|m| self.invariant(m));
        out
    }
}

pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &pivot;
                for (x, v) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Tor dimensions of the Koszul complex of monomial generators over a monomial ring.
pub fn brute_tor(action: &DiagonalAction, gens: &[Vec<u8>], p_max: usize, d_max: usize) -> BTreeMap<(usize, usize), u64> {
    let deg = |m: &[u8]| m.iter().map(|&e| e as usize).sum::<usize>();
    let subsets = |p: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..p {
            out = out
                .into_iter()
                .flat_map(|s: Vec<usize>| {
                    let start = s.last().map_or(0, |&x| x + 1);
                    (start..gens.len()).map(move |k| {
                        let mut t = s.clone();
                        t.push(k);
                        t
                    })
                })
                .collect();
        }
        out
    };
    let chain = |p: usize, d: usize| -> Vec<(Vec<usize>, Vec<u8>)> {
        let mut out = Vec::new();
        for s in subsets(p) {
            let e: usize = s.iter().map(|&k| deg(&gens[k])).sum();
            if e <= d {
                for m in action.monomials(d - e) {
                    out.push((s.clone(), m));
                }
            }
        }
        out
    };
    let diff_rank = |p: usize, d: usize| -> usize {
        if p == 0 {
            return 0;
        }
        let src = chain(p, d);
        let tgt = chain(p - 1, d);
        let index: HashMap<&(Vec<usize>, Vec<u8>), usize> = tgt.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut rows = vec![vec![BigRational::zero(); src.len()]; tgt.len()];
        for (col, (s, m)) in src.iter().enumerate() {
            for (j, &k) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != k).collect();
                let prod: Vec<u8> = m.iter().zip(&gens[k]).map(|(a, b)| a + b).collect();
                let row = index[&(rest, prod)];
                if j % 2 == 0 {
                    rows[row][col] += BigRational::one();
                } else {
                    rows[row][col] -= BigRational::one();
                }
            }
        }
        rank(rows)
    };
    let mut out = BTreeMap::new();
    for d in 0..=d_max {
        for p in 0..=p_max {
            let dim = chain(p, d).len() - diff_rank(p, d) - diff_rank(p + 1, d);
            if dim > 0 {
                out.insert((p, d), dim as u64);
            }
        }
    }
    out
}

/// Largest length of a minimal zero-sum sequence over `ℤ/n_1 × … × ℤ/n_r`.
pub fn davenport(moduli: &[u32]) -> usize {
    let elements: Vec<Vec<u32>> = moduli.iter().fold(vec![vec![]], |acc, &n| {
        acc.into_iter().flat_map(|v| (0..n).map(move |x| [v.clone(), vec![x]].concat())).collect()
    });
    let nonzero: Vec<&Vec<u32>> = elements.iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    let order: usize = moduli.iter().map(|&n| n as usize).product();
    let add = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().zip(b).zip(moduli).map(|((x, y), n)| (x + y) % n).collect() };
    let zero = vec![0u32; moduli.len()];
    let mut best = 0;
    // multisets as nondecreasing index sequences
    let mut stack: Vec<Vec<usize>> = (0..nonzero.len()).map(|i| vec![i]).collect();
    while let Some(seq) = stack.pop() {
        let total = seq.iter().fold(zero.clone(), |acc, &i| add(&acc, nonzero[i]));
        if total == zero {
            // minimal iff no proper nonempty subsequence sums to zero
            let n = seq.len();
            let minimal = (1..(1u32 << n) - 1).all(|mask| {
                let s = (0..n).filter(|b| mask & (1 << b) != 0).fold(zero.clone(), |acc, b| add(&acc, nonzero[seq[b]]));
                s != zero
            });
            if minimal {
                best = best.max(n);
            }
            continue;
        }
        if seq.len() < order {
            let last = *seq.last().unwrap();
            for i in last..nonzero.len() {
                let mut next = seq.clone();
                next.push(i);
                stack.push(next);
            }
        }
    }
    best
}


/// Tor table of the engine on `⊕ k_i V_i` without weight blocking, and the degree scanned to.
pub fn engine_tor(name: &str, mults: &[usize], mode: GeneratorMode, p_max: usize) -> (BTreeMap<(usize, usize), u64>, usize) {
    let (ring, beta) = plain_setup(name, mults);
    let gens = build_e(&ring, mode, &beta, ComplementOrder::Forward).unwrap();
    let table = KoszulComplex::new(&ring, &gens).unwrap().tor_table(p_max).unwrap();
    (table.entries, table.scanned_to)
}

pub fn plain_setup(name: &str, mults: &[usize]) -> (InvariantRing, NoetherResult) {
    let cat = builtin(name).unwrap().catalog;
    let beta = noether_number(&cat, 8, LIMIT).unwrap();
    let ring = InvariantRing::plain(cat.universal_rep(mults).unwrap(), LIMIT).unwrap();
    (ring, beta)
}

/// Instances for the structural suite.
pub const CASES: &[(&str, &[usize])] = &[
    ("builtin:cyclic:2", &[0, 2]),
    ("builtin:cyclic:2", &[1, 1]),
    ("builtin:cyclic:2", &[0, 3]),
    ("builtin:cyclic:3", &[0, 2, 0]),
    ("builtin:cyclic:3", &[0, 1, 1]),
    ("builtin:cyclic:4", &[0, 1, 0, 1]),
    ("builtin:klein:4", &[0, 1, 1, 0]),
    ("builtin:sym:3", &[0, 0, 1]),
    ("builtin:sym:3", &[0, 1, 1]),
];

const MODES: [GeneratorMode; 2] = [GeneratorMode::Minimal, GeneratorMode::Full];

pub fn check_d_squared(name: &str, mults: &[usize]) -> Check {
    let (ring, beta) = plain_setup(name, mults);
    for mode in MODES {
        let gens = build_e(&ring, mode, &beta, ComplementOrder::Forward).map_err(|e| e.to_string())?;
        let k = KoszulComplex::new(&ring, &gens).map_err(|e| e.to_string())?;
        for d in 0..=k.ceiling(1) {
            for p in 1..=2 {
                let a = k.differential_at_degree(p, d).map_err(|e| e.to_string())?;
                let b = k.differential_at_degree(p + 1, d).map_err(|e| e.to_string())?;
                ensure(a.cols() == b.rows() && a.mul(&b).is_zero(), || format!("{name} {mode}: ∂∂ ≠ 0 at p={p} d={d}"))?;
            }
        }
    }
    Ok(())
}

/// `dim R_d` three ways: Molien, rank of the Reynolds projector, engine bases.
pub fn check_molien_reynolds(name: &str) -> Check {
    let b = builtin(name).map_err(|e| e.to_string())?;
    let g = b.group.order();
    let molien = molien_series(&b.natural, 2 * g).map_err(|e| e.to_string())?;
    let ring = InvariantRing::plain(b.natural.clone(), LIMIT).map_err(|e| e.to_string())?;
    for d in 0..=2 * g {
        let action = sym_power_action(&b.natural, d, LIMIT).map_err(|e| e.to_string())?;
        let rank = reynolds_matrix(&action).rank() as u64;
        let blocks = ring.degree_dim(d).map_err(|e| e.to_string())?;
        ensure(molien[d] == rank && blocks == rank, || format!("{name} d={d}: Molien {}, Reynolds {rank}, bases {blocks}", molien[d]))?;
    }
    Ok(())
}

pub fn check_euler(name: &str, mults: &[usize]) -> Check {
    let (ring, beta) = plain_setup(name, mults);
    let gens = build_e(&ring, GeneratorMode::Minimal, &beta, ComplementOrder::Forward).map_err(|e| e.to_string())?;
    let p_max = gens.len().min(3);
    let t = KoszulComplex::new(&ring, &gens).and_then(|k| k.tor_table(p_max)).map_err(|e| e.to_string())?;
    ensure(!t.euler_checked.is_empty(), || format!("{name}: no degree was Euler-checked"))?;
    if p_max == gens.len() {
        ensure(t.euler_checked.len() == t.scanned_to + 1, || format!("{name}: full complex not Euler-checked in every degree"))?;
    }
    Ok(())
}

pub fn check_monotone(name: &str, mults: &[usize]) -> Check {
    let (ring, beta) = plain_setup(name, mults);
    let min = build_e(&ring, GeneratorMode::Minimal, &beta, ComplementOrder::Forward).map_err(|e| e.to_string())?;
    let full = build_e(&ring, GeneratorMode::Full, &beta, ComplementOrder::Forward).map_err(|e| e.to_string())?;
    let km = KoszulComplex::new(&ring, &min).map_err(|e| e.to_string())?;
    let kf = KoszulComplex::new(&ring, &full).map_err(|e| e.to_string())?;
    for p in 1..=2 {
        let a = km.syzygy_degree(p, None).map_err(|e| e.to_string())?.value;
        let b = kf.syzygy_degree(p, None).map_err(|e| e.to_string())?.value;
        ensure(a.is_none() || a <= b, || format!("{name} p={p}: s_p {a:?} > s'_p {b:?}"))?;
    }
    Ok(())
}

pub fn check_choice_independence(name: &str, mults: &[usize]) -> Check {
    let (ring, beta) = plain_setup(name, mults);
    let fwd = build_e(&ring, GeneratorMode::Minimal, &beta, ComplementOrder::Forward).map_err(|e| e.to_string())?;
    let rev = build_e(&ring, GeneratorMode::Minimal, &beta, ComplementOrder::Reverse).map_err(|e| e.to_string())?;
    ensure(fwd.degrees() == rev.degrees(), || format!("{name}: generator degrees depend on the choice"))?;
    let a = KoszulComplex::new(&ring, &fwd).and_then(|k| k.tor_table(2)).map_err(|e| e.to_string())?;
    let b = KoszulComplex::new(&ring, &rev).and_then(|k| k.tor_table(2)).map_err(|e| e.to_string())?;
    ensure(a.entries == b.entries, || format!("{name}: Tor tables depend on the choice"))
}

pub fn check_guard_band(name: &str, mults: &[usize]) -> Check {
    let (ring, beta) = plain_setup(name, mults);
    for mode in MODES {
        let gens = build_e(&ring, mode, &beta, ComplementOrder::Forward).map_err(|e| e.to_string())?;
        let k = KoszulComplex::new(&ring, &gens).map_err(|e| e.to_string())?;
        ensure(k.guard() == beta.value, || format!("{name}: guard band is not β wide"))?;
        for p in 1..=2 {
            let c = k.ceiling(p);
            for d in c + 1..=c + k.guard() {
                let dim = k.tor_dimension(p, d).map_err(|e| e.to_string())?;
                ensure(dim == 0, || format!("{name} {mode}: Tor_{p},{d} = {dim} beyond ceiling {c}"))?;
            }
        }
    }
    Ok(())
}

pub fn check_kostka_unitriangular(max_size: usize) -> Check {
    for n in 0..=max_size {
        let parts = partitions_of(n, None);
        for lam in &parts {
            for mu in &parts {
                let k = kostka_number(lam, mu.parts()).map_err(|e| e.to_string())?;
                if lam == mu {
                    ensure(k == 1, || format!("K({lam},{lam}) = {k}"))?;
                } else if !lam.dominates(mu) {
                    ensure(k == 0, || format!("K({lam},{mu}) = {k} without dominance"))?;
                }
            }
        }
    }
    Ok(())
}

pub fn check_lr_symmetry(max_size: usize) -> Check {
    for n in 0..=max_size {
        for lam in partitions_of(n, None) {
            for a in 0..=n {
                for mu in partitions_of(a, None) {
                    for nu in partitions_of(n - a, None) {
                        let (x, y) = (lr_coefficient(&lam, &mu, &nu), lr_coefficient(&lam, &nu, &mu));
                        ensure(x == y, || format!("c^{lam}_{mu},{nu} = {x} but c^{lam}_{nu},{mu} = {y}"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Weight multiplicities of `S_μ ⊗ S_ν (C^k)` built from Kostka numbers and
/// decomposed by back-substitution must give the LR coefficients and the
/// product of dimensions.
pub fn check_schur_reconstruction(max_size: usize, k: usize) -> Check {
    let layout = VariableLayout::isotypic(&[1], &[k]);
    for n in 1..=max_size {
        for a in 1..n {
            for mu in partitions_of(a, Some(k)) {
                for nu in partitions_of(n - a, Some(k)) {
                    let mut weights = BTreeMap::new();
                    for alpha in compositions(n, k) {
                        let mut dim = 0;
                        for beta in compositions(a, k) {
                            if beta.iter().zip(&alpha).any(|(b, x)| b > x) {
                                continue;
                            }
                            let gamma: Vec<usize> = alpha.iter().zip(&beta).map(|(x, b)| x - b).collect();
                            dim += kostka_number(&mu, &beta).unwrap() * kostka_number(&nu, &gamma).unwrap();
                        }
                        if dim > 0 {
                            weights.insert(alpha.iter().map(|&x| x as u32).collect::<Vec<u32>>(), dim);
                        }
                    }
                    let decomp = schur_multiplicities(&weights, &layout).map_err(|e| e.to_string())?;
                    let expected: BTreeMap<Vec<Partition>, u64> = partitions_of(n, Some(k))
                        .into_iter()
                        .map(|lam| (lr_coefficient(&lam, &mu, &nu), lam))
                        .filter(|(c, _)| *c > 0)
                        .map(|(c, lam)| (vec![lam], c))
                        .collect();
                    ensure(decomp.multiplicities == expected, || format!("{mu} ⊗ {nu}: multiplicities differ from LR"))?;
                    let dim = schur_dim(&mu, k) as u128 * schur_dim(&nu, k) as u128;
                    ensure(decomp.dimension() == dim, || format!("{mu} ⊗ {nu}: dimension {} ≠ {dim}", decomp.dimension()))?;
                }
            }
        }
    }
    Ok(())
}
