//! Shipped groups with their irreducible representations.
//!
//! Each catalog lists the trivial representation first.

use std::sync::Arc;

use super::{generate_group, FiniteGroup, Generators, IrrepCatalog, Representation, DEFAULT_ORDER_LIMIT};
use crate::error::{Error, Result};
use crate::field::{Cyclotomic, CyclotomicField};
use crate::linalg::Matrix;

#[derive(Debug, Clone)]
pub struct BuiltinGroup {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub catalog: IrrepCatalog,
    /// The defining permutation or matrix representation.
    pub natural: Representation,
}

/// Every builtin name accepted by [`builtin`].
pub fn builtin_names() -> Vec<String> {
    let mut names: Vec<String> = (1..=12).map(|n| format!("builtin:cyclic:{n}")).collect();
    names.extend((3..=6).map(|n| format!("builtin:dihedral:{n}")));
    for s in ["builtin:klein:4", "builtin:sym:3", "builtin:sym:4", "builtin:alt:4", "builtin:quaternion:8"] {
        names.push(s.to_string());
    }
    names
}

pub fn builtin(name: &str) -> Result<BuiltinGroup> {
    let unknown = || Error::invalid(format!("unknown builtin: {name}"));
    let parts: Vec<&str> = name.split(':').collect();
    if parts.len() != 3 || parts[0] != "builtin" {
        return Err(unknown());
    }
    let n: usize = parts[2].parse().map_err(|_| unknown())?;
    match (parts[1], n) {
        ("cyclic", 1..=12) => cyclic(n),
        ("dihedral", 3..=6) => dihedral(n),
        ("klein", 4) => klein(),
        ("sym", 3) => sym3(),
        ("sym", 4) => sym4(),
        ("alt", 4) => alt4(),
        ("quaternion", 8) => quaternion(),
        _ => Err(unknown()),
    }
    .map(|(group, catalog, natural)| BuiltinGroup { name: name.to_string(), group, catalog, natural })
}

type Parts = (Arc<FiniteGroup>, IrrepCatalog, Representation);

fn from_permutations(perms: Vec<Vec<usize>>, irreps: Vec<(usize, Vec<Matrix<Cyclotomic>>)>) -> Result<Parts> {
    let gg = generate_group(&Generators::Permutations(perms), DEFAULT_ORDER_LIMIT)?;
    finish(gg.group, gg.natural, irreps)
}

fn finish(group: Arc<FiniteGroup>, natural: Representation, irreps: Vec<(usize, Vec<Matrix<Cyclotomic>>)>) -> Result<Parts> {
    let reps = irreps
        .into_iter()
        .map(|(deg, imgs)| Representation::from_generator_images(group.clone(), deg, imgs))
        .collect::<Result<Vec<_>>>()?;
    let catalog = IrrepCatalog::validated(group.clone(), reps)?;
    Ok((group, catalog, natural))
}

fn scalar(c: Cyclotomic) -> Matrix<Cyclotomic> {
    Matrix::new(1, 1, vec![c])
}

fn int(v: i64) -> Matrix<Cyclotomic> {
    scalar(Cyclotomic::from_integer(v))
}

fn linear(values: &[i64]) -> (usize, Vec<Matrix<Cyclotomic>>) {
    (1, values.iter().map(|&v| int(v)).collect())
}

fn sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for start in 0..p.len() {
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// Permutation action restricted to the sum-zero hyperplane, in the basis `e_k − e_{k+1}`.
fn sum_zero_matrix(p: &[usize]) -> Matrix<Cyclotomic> {
    let n = p.len() - 1;
    let mut m = Matrix::zeros(n, n);
    for k in 0..n {
        let (a, b) = (p[k], p[k + 1]);
        // e_a − e_b = ± Σ_{j between} f_j
        let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
        for j in lo..hi {
            m.set(j, k, Cyclotomic::from_integer(s));
        }
    }
    m
}

fn cyclic(n: usize) -> Result<Parts> {
    let gen: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let field = CyclotomicField::new(n as u32)?;
    let irreps = (0..n).map(|k| (1, vec![scalar(Cyclotomic::root_of_unity(&field, k as i64))])).collect();
    from_permutations(vec![gen], irreps)
}

fn dihedral(n: usize) -> Result<Parts> {
    let r: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let s: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    let field = CyclotomicField::new(n as u32)?;
    let mut irreps = vec![linear(&[1, 1]), linear(&[1, -1])];
    if n % 2 == 0 {
        irreps.push(linear(&[-1, 1]));
        irreps.push(linear(&[-1, -1]));
    }
    for k in 1..=(n - 1) / 2 {
        let z = Cyclotomic::root_of_unity(&field, k as i64);
        let zi = Cyclotomic::root_of_unity(&field, -(k as i64));
        let rot = Matrix::new(2, 2, vec![z, Cyclotomic::zero(), Cyclotomic::zero(), zi]);
        let refl = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        irreps.push((2, vec![rot, refl]));
    }
    from_permutations(vec![r, s], irreps)
}

fn klein() -> Result<Parts> {
    let a = vec![1, 0, 3, 2];
    let b = vec![2, 3, 0, 1];
    let irreps = vec![linear(&[1, 1]), linear(&[-1, 1]), linear(&[1, -1]), linear(&[-1, -1])];
    from_permutations(vec![a, b], irreps)
}

fn sym3() -> Result<Parts> {
    let gens = vec![vec![1, 0, 2], vec![1, 2, 0]];
    let irreps = vec![
        linear(&[1, 1]),
        linear(&[sign(&gens[0]), sign(&gens[1])]),
        (2, gens.iter().map(|p| sum_zero_matrix(p)).collect()),
    ];
    from_permutations(gens, irreps)
}

fn sym4() -> Result<Parts> {
    let gens = vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]];
    // S4 → S3 through its action on the three pairings {01|23}, {02|13}, {03|12}
    let pairings = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];
    let canon = |q: [usize; 4]| {
        let mut a = [q[0].min(q[1]), q[0].max(q[1])];
        let mut b = [q[2].min(q[3]), q[2].max(q[3])];
        if a[0] > b[0] {
            std::mem::swap(&mut a, &mut b);
        }
        pairings.iter().position(|p| p[..2] == a && p[2..] == b).expect("pairing")
    };
    let on_pairings =
        |p: &[usize]| -> Vec<usize> { pairings.iter().map(|q| canon([p[q[0]], p[q[1]], p[q[2]], p[q[3]]])).collect() };
    let signs: Vec<i64> = gens.iter().map(|p| sign(p)).collect();
    let standard: Vec<Matrix<Cyclotomic>> = gens.iter().map(|p| sum_zero_matrix(p)).collect();
    let twisted = standard.iter().zip(&signs).map(|(m, &s)| m.scale(&Cyclotomic::from_integer(s))).collect();
    let irreps = vec![
        linear(&[1, 1]),
        linear(&signs),
        (2, gens.iter().map(|p| sum_zero_matrix(&on_pairings(p))).collect()),
        (3, standard),
        (3, twisted),
    ];
    from_permutations(gens, irreps)
}

fn alt4() -> Result<Parts> {
    let gens = vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]];
    let field = CyclotomicField::new(3)?;
    let w = Cyclotomic::root_of_unity(&field, 1);
    let w2 = Cyclotomic::root_of_unity(&field, 2);
    let irreps = vec![
        linear(&[1, 1]),
        (1, vec![scalar(w), int(1)]),
        (1, vec![scalar(w2), int(1)]),
        (3, gens.iter().map(|p| sum_zero_matrix(p)).collect()),
    ];
    from_permutations(gens, irreps)
}

fn quaternion() -> Result<Parts> {
    let field = CyclotomicField::new(4)?;
    let i = Cyclotomic::root_of_unity(&field, 1);
    let a = Matrix::new(2, 2, vec![i.clone(), Cyclotomic::zero(), Cyclotomic::zero(), i.neg()]);
    let b = Matrix::from_i64(&[&[0, 1], &[-1, 0]]);
    let gg = generate_group(&Generators::Matrices(vec![a.clone(), b.clone()]), DEFAULT_ORDER_LIMIT)?;
    let irreps =
        vec![linear(&[1, 1]), linear(&[-1, 1]), linear(&[1, -1]), linear(&[-1, -1]), (2, vec![a, b])];
    finish(gg.group, gg.natural, irreps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{decompose_rep, regular_representation, validate_irrep_catalog};

    #[test]
    fn every_builtin_validates() {
        for name in builtin_names() {
            let b = builtin(&name).unwrap();
            let report = validate_irrep_catalog(&b.catalog);
            assert!(report.passed(), "{name}: {:?}", report.failures);
            let reg = regular_representation(&b.group);
            assert_eq!(decompose_rep(&reg, &b.catalog).unwrap(), b.catalog.degrees(), "{name}");
        }
    }

    #[test]
    fn orders_and_degrees() {
        let cases = [
            ("builtin:sym:3", 6, vec![1, 1, 2]),
            ("builtin:sym:4", 24, vec![1, 1, 2, 3, 3]),
            ("builtin:alt:4", 12, vec![1, 1, 1, 3]),
            ("builtin:quaternion:8", 8, vec![1, 1, 1, 1, 2]),
            ("builtin:dihedral:4", 8, vec![1, 1, 1, 1, 2]),
            ("builtin:dihedral:5", 10, vec![1, 1, 2, 2]),
            ("builtin:klein:4", 4, vec![1, 1, 1, 1]),
            ("builtin:cyclic:1", 1, vec![1]),
        ];
        for (name, g, degrees) in cases {
            let b = builtin(name).unwrap();
            assert_eq!(b.group.order(), g, "{name}");
            assert_eq!(b.catalog.degrees(), degrees, "{name}");
        }
    }

    #[test]
    fn s3_standard_character() {
        let b = builtin("builtin:sym:3").unwrap();
        let ch = &b.catalog.characters()[2];
        let g = &b.group;
        for (c, members) in g.classes().iter().enumerate() {
            let want = match g.element_order(members[0]) {
                1 => 2,
                2 => 0,
                _ => -1,
            };
            assert_eq!(ch.values[c], Cyclotomic::from_integer(want));
        }
        assert_eq!(decompose_rep(&b.natural, &b.catalog).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn catalog_failures_are_reported() {
        let b = builtin("builtin:sym:3").unwrap();
        let partial = IrrepCatalog::new(b.group.clone(), b.catalog.irreps()[..2].to_vec()).unwrap();
        let report = validate_irrep_catalog(&partial);
        assert!(!report.passed());
        assert_eq!(report.sum_of_squares, 2);
        assert!(report.failures[0].contains("deficit 4"));
    }

    #[test]
    fn unknown_names() {
        assert!(builtin("builtin:cyclic:13").is_err());
        assert!(builtin("builtin:dihedral:7").is_err());
        assert!(builtin("cyclic:3").is_err());
    }
}
