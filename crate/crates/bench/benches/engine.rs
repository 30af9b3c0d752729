use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use syzlab_bench::{fixture, LIMIT};
use syzlab_core::invariant::{build_e, noether_number, ComplementOrder, GeneratorMode};
use syzlab_core::schur::{kostka_number, lr_coefficient, partitions_of};
use syzlab_core::{builtin, molien_series, KoszulComplex, Partition};

fn invariants(c: &mut Criterion) {
    let (catalog, _, _) = fixture("builtin:dihedral:4", &[0, 0, 0, 0, 1]);
    let rep = catalog.universal_rep(&[0, 0, 0, 0, 2]).unwrap();
    c.bench_function("molien_d4_deg16", |b| b.iter(|| molien_series(black_box(&rep), 16).unwrap()));
    let klein = builtin("builtin:klein:4").unwrap().catalog;
    c.bench_function("noether_klein", |b| b.iter(|| noether_number(black_box(&klein), 8, LIMIT).unwrap()));
}

fn syzygies(c: &mut Criterion) {
    c.bench_function("tor_table_cubic_veronese", |b| {
        b.iter(|| {
            let (_, beta, ring) = fixture("builtin:cyclic:3", &[0, 2, 0]);
            let gens = build_e(&ring, GeneratorMode::Minimal, &beta, ComplementOrder::Forward).unwrap();
            KoszulComplex::new(&ring, &gens).unwrap().tor_table(2).unwrap()
        })
    });
    c.bench_function("syzygy_degree_w1_z2_full", |b| {
        b.iter(|| {
            let (_, beta, ring) = fixture("builtin:cyclic:2", &[3, 3]);
            let gens = build_e(&ring, GeneratorMode::Full, &beta, ComplementOrder::Forward).unwrap();
            KoszulComplex::new(&ring, &gens).unwrap().syzygy_degree(1, None).unwrap()
        })
    });
}

fn tableaux(c: &mut Criterion) {
    let parts = partitions_of(8, None);
    c.bench_function("kostka_matrix_8", |b| {
        b.iter(|| {
            let mut total = 0u64;
            for lam in &parts {
                for mu in &parts {
                    total += kostka_number(lam, mu.parts()).unwrap();
                }
            }
            total
        })
    });
    let lam = Partition::new(vec![4, 3, 2, 1]).unwrap();
    let mu = Partition::new(vec![3, 2, 1]).unwrap();
    let nu = Partition::new(vec![2, 1, 1]).unwrap();
    c.bench_function("lr_4321", |b| b.iter(|| lr_coefficient(black_box(&lam), &mu, &nu)));
}

criterion_group!(benches, invariants, syzygies, tableaux);
criterion_main!(benches);
