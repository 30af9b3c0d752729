//! Engine results against independent brute-force computations.

mod support;

use std::collections::BTreeMap;

use support::{brute_tor, davenport, engine_tor, DiagonalAction, LIMIT};
use syzlab_core::invariant::{minimal_generators, noether_number, ComplementOrder, GeneratorMode, InvariantRing};
use syzlab_core::{builtin, regular_representation};

#[test]
fn quadratic_veronese_matches_brute_force() {
    let action = DiagonalAction { modulus: 2, weights: vec![1, 1] };
    let gens = vec![vec![2, 0], vec![1, 1], vec![0, 2]];
    let (engine, scanned) = engine_tor("builtin:cyclic:2", &[0, 2], GeneratorMode::Minimal, 2);
    assert_eq!(engine, brute_tor(&action, &gens, 2, scanned));
    assert_eq!(engine, BTreeMap::from([((0, 0), 1), ((1, 4), 1)]));
}

#[test]
fn cubic_veronese_matches_brute_force() {
    let action = DiagonalAction { modulus: 3, weights: vec![1, 1] };
    let gens = vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]];
    let (engine, scanned) = engine_tor("builtin:cyclic:3", &[0, 2, 0], GeneratorMode::Minimal, 2);
    assert_eq!(engine, brute_tor(&action, &gens, 2, scanned));
    assert_eq!(engine.get(&(1, 6)), Some(&3));
    assert_eq!(engine.keys().filter(|k| k.0 == 1).map(|k| k.1).max(), Some(6));
}

#[test]
fn full_generators_match_brute_force() {
    // ℤ/2 on triv ⊕ sign: E = {x, x², y²}
    let action = DiagonalAction { modulus: 2, weights: vec![0, 1] };
    let gens = vec![vec![1, 0], vec![2, 0], vec![0, 2]];
    let (engine, scanned) = engine_tor("builtin:cyclic:2", &[1, 1], GeneratorMode::Full, 2);
    assert_eq!(engine, brute_tor(&action, &gens, 2, scanned));
}

#[test]
fn mixed_characters_match_brute_force() {
    // ℤ/3 acting by (ω, ω²): generators x³, xy, y³
    let action = DiagonalAction { modulus: 3, weights: vec![1, 2] };
    let gens = vec![vec![3, 0], vec![1, 1], vec![0, 3]];
    let (engine, scanned) = engine_tor("builtin:cyclic:3", &[0, 1, 1], GeneratorMode::Minimal, 2);
    assert_eq!(engine, brute_tor(&action, &gens, 2, scanned));
    assert_eq!(engine.get(&(1, 6)), Some(&1));
}

#[test]
fn noether_numbers_match_davenport() {
    for (name, moduli) in [("builtin:cyclic:2", vec![2]), ("builtin:cyclic:3", vec![3]), ("builtin:klein:4", vec![2, 2])] {
        let cat = builtin(name).unwrap().catalog;
        let beta = noether_number(&cat, 8, LIMIT).unwrap();
        assert!(beta.exact);
        assert_eq!(beta.value, davenport(&moduli), "{name}");
        // the literal permutation regular representation gives the same value
        let reg = InvariantRing::plain(regular_representation(cat.group()), LIMIT).unwrap();
        let mg = minimal_generators(&reg, cat.group().order(), ComplementOrder::Forward).unwrap();
        assert_eq!(mg.beta_v, beta.value, "{name}");
    }
    assert_eq!(davenport(&[2]), 2);
    assert_eq!(davenport(&[3]), 3);
    assert_eq!(davenport(&[2, 2]), 3);
    assert_eq!(davenport(&[4]), 4);
}

#[test]
fn larger_abelian_noether_numbers() {
    for (name, moduli) in [("builtin:cyclic:4", vec![4]), ("builtin:cyclic:5", vec![5]), ("builtin:cyclic:6", vec![6])] {
        let cat = builtin(name).unwrap().catalog;
        assert_eq!(noether_number(&cat, 8, LIMIT).unwrap().value, davenport(&moduli), "{name}");
    }
}

#[test]
fn brute_force_rank_sanity() {
    // ℤ/1 on C: R = C[x], E = {x}: Tor is C in degree 0 only
    let action = DiagonalAction { modulus: 1, weights: vec![0] };
    let t = brute_tor(&action, &[vec![1]], 1, 4);
    assert_eq!(t, BTreeMap::from([((0, 0), 1)]));
    // E = {x, x}: Koszul on a repeated element gives Tor_1 in degree 1
    let t = brute_tor(&action, &[vec![1], vec![1]], 2, 4);
    assert_eq!(t, BTreeMap::from([((0, 0), 1), ((1, 1), 1)]));
}
