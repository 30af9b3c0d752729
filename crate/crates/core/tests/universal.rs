use syzlab_core::invariant::{build_e, noether_number, ComplementOrder, GeneratorMode, InvariantRing, NoetherResult};
use syzlab_core::poly::WeightScope;
use syzlab_core::schur::{
    build_universal_rep, lemma1_check, row_bound_check, schur_multiplicities, stabilization_check, weight_decomposition,
    Space, UniversalSpec,
};
use syzlab_core::{builtin, KoszulComplex};

const LIMIT: usize = 20000;

#[test]
fn lemma1_for_z2() {
    let cat = builtin("builtin:cyclic:2").unwrap().catalog;
    let beta = noether_number(&cat, 8, LIMIT).unwrap();
    let samples = vec![
        ("sign".to_string(), vec![0, 1]),
        ("sign²".to_string(), vec![0, 2]),
        ("triv⊕sign".to_string(), vec![1, 1]),
        ("zero".to_string(), vec![0, 0]),
    ];
    let report = lemma1_check(&cat, &beta, &samples, 1, LIMIT).unwrap();
    assert_eq!(report.universal.multiplicities, vec![3, 3]);
    assert_eq!(report.universal.degree(), 6);
    let values: Vec<Option<usize>> = report.rows.iter().map(|r| r.value).collect();
    assert_eq!(values, vec![None, Some(4), Some(2), None]);
    assert!(report.passed());
    assert!(report.universal_value >= Some(4));
}

fn ring_bounds(name: &str, max_degree: usize) {
    let cat = builtin(name).unwrap().catalog;
    let degrees = cat.degrees();
    let ks: Vec<usize> = degrees.iter().map(|d| d + 1).collect();
    let spec = UniversalSpec::new(&cat, ks).unwrap();
    let ring = spec.ring(&cat, LIMIT).unwrap();
    let beta = NoetherResult { value: 1, exact: false };
    let gens = build_e(&ring, GeneratorMode::Full, &beta, ComplementOrder::Forward).unwrap();
    let k = KoszulComplex::new(&ring, &gens).unwrap();
    for d in 0..=max_degree {
        let weights = weight_decomposition(&k, Space::Invariants { d }, WeightScope::Dominant).unwrap();
        let decomp = schur_multiplicities(&weights, ring.layout()).unwrap();
        assert_eq!(decomp.dimension(), ring.degree_dim(d).unwrap() as u128, "{name} d={d}");
        let report = row_bound_check(&decomp, &degrees).unwrap();
        assert!(report.passed, "{name} d={d}: {:?}", report.witnesses);
    }
}

#[test]
fn invariant_row_bounds_z2() {
    ring_bounds("builtin:cyclic:2", 6);
}

#[test]
fn invariant_row_bounds_z3() {
    ring_bounds("builtin:cyclic:3", 6);
}

#[test]
fn invariant_row_bounds_s3() {
    ring_bounds("builtin:sym:3", 6);
}

#[test]
fn syzygy_row_bounds_z2() {
    let cat = builtin("builtin:cyclic:2").unwrap().catalog;
    let beta = noether_number(&cat, 8, LIMIT).unwrap();
    let p = 1;
    let spec = build_universal_rep(&cat, &beta, p).unwrap().grown(1);
    let ring = spec.ring(&cat, LIMIT).unwrap();
    let gens = build_e(&ring, GeneratorMode::Full, &beta, ComplementOrder::Forward).unwrap();
    let k = KoszulComplex::new(&ring, &gens).unwrap();
    let bounds: Vec<usize> = cat.degrees().iter().map(|d| beta.value * p + d).collect();
    for d in 0..=k.ceiling(p) {
        let weights = weight_decomposition(&k, Space::Tor { p, d }, WeightScope::Dominant).unwrap();
        let decomp = schur_multiplicities(&weights, ring.layout()).unwrap();
        let report = row_bound_check(&decomp, &bounds).unwrap();
        assert!(report.passed, "d={d}: {:?}", report.witnesses);
    }
}

#[test]
fn stabilization_z2() {
    let cat = builtin("builtin:cyclic:2").unwrap().catalog;
    let beta = NoetherResult { value: 2, exact: true };
    let spec = build_universal_rep(&cat, &beta, 1).unwrap();
    let r = stabilization_check(&cat, &spec, &beta, 1, 4, GeneratorMode::Full, LIMIT).unwrap();
    assert!(r.passed && r.dim_small > 0 && r.dim_large > 0);
    let zero = UniversalSpec::new(&cat, vec![0, 0]).unwrap();
    let ring = zero.ring(&cat, LIMIT).unwrap();
    let gens = build_e(&ring, GeneratorMode::Full, &beta, ComplementOrder::Forward).unwrap();
    assert!(gens.is_empty());
    let t = KoszulComplex::new(&ring, &gens).unwrap().tor_table(2).unwrap();
    assert_eq!(t.entries.len(), 1);
}

#[test]
fn scoped_tor_matches_full_enumeration() {
    let cat = builtin("builtin:cyclic:2").unwrap().catalog;
    let beta = NoetherResult { value: 2, exact: true };
    let ring = InvariantRing::isotypic(&cat, &[2, 2], LIMIT).unwrap();
    let gens = build_e(&ring, GeneratorMode::Full, &beta, ComplementOrder::Forward).unwrap();
    let dominant = KoszulComplex::new(&ring, &gens).unwrap();
    let all = KoszulComplex::new(&ring, &gens).unwrap().with_scope(WeightScope::All);
    assert_eq!(dominant.tor_table(2).unwrap(), all.tor_table(2).unwrap());
}
