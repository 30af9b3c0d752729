use std::sync::Arc;

use super::{FiniteGroup, EXHAUSTIVE_CHECK_ORDER};
use crate::error::{Error, Result};
use crate::field::{Cyclotomic, Rational};
use crate::linalg::Matrix;
use crate::poly::{apply_to_monomial, monomial_count, monomials_of_degree, variable_images};

/// Default cap on the size of a symmetric-power monomial basis.
pub const DEFAULT_BASIS_LIMIT: usize = 20000;

/// A matrix representation: one image per group element.
#[derive(Debug, Clone)]
pub struct Representation {
    group: Arc<FiniteGroup>,
    degree: usize,
    images: Vec<Matrix<Cyclotomic>>,
}

/// Character values, one per conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<Cyclotomic>,
}

impl Character {
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// `(1/g) Σ_x χ(x) conj(ψ(x))`.
    pub fn inner(&self, other: &Character, group: &FiniteGroup) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for (c, members) in group.classes().iter().enumerate() {
            let term = self.values[c].mul(&other.values[c].conj());
            acc = acc.add(&term.mul(&Cyclotomic::from_integer(members.len() as i64)));
        }
        acc.mul(&Cyclotomic::from_rational(Rational::new(1, group.order() as i64)))
    }
}

impl Representation {
    /// Trusts the caller that `images` is a homomorphism indexed like `group`.
    pub fn new_unchecked(group: Arc<FiniteGroup>, degree: usize, images: Vec<Matrix<Cyclotomic>>) -> Self {
        debug_assert_eq!(images.len(), group.order());
        Representation { group, degree, images }
    }

    /// Extends generator images to the whole group and checks the homomorphism law.
    pub fn from_generator_images(group: Arc<FiniteGroup>, degree: usize, gen_images: Vec<Matrix<Cyclotomic>>) -> Result<Self> {
        if gen_images.len() != group.generators().len() {
            return Err(Error::invalid(format!(
                "expected {} generator images, got {}",
                group.generators().len(),
                gen_images.len()
            )));
        }
        for m in &gen_images {
            if m.rows() != degree || m.cols() != degree {
                return Err(Error::invalid(format!("generator image is not {degree}×{degree}")));
            }
        }
        let images = group.extend_along_words(Matrix::identity(degree), &gen_images, |a, b| a.mul(b));
        let rep = Representation { group, degree, images };
        // the image of each generator index must agree with the supplied one
        for (k, &x) in rep.group.generators().iter().enumerate() {
            if rep.images[x] != gen_images[k] {
                return Err(Error::invalid("not a homomorphism"));
            }
        }
        rep.check_homomorphism()?;
        Ok(rep)
    }

    /// Checks `ρ(ab) = ρ(a)ρ(b)` (exhaustive up to order 64, sampled above) and invertibility.
    pub fn check_homomorphism(&self) -> Result<()> {
        let g = self.group.order();
        if self.images.len() != g {
            return Err(Error::invalid("one image per group element required"));
        }
        if self.images[0] != Matrix::identity(self.degree) {
            return Err(Error::invalid("not a homomorphism"));
        }
        let pairs: Vec<(usize, usize)> = if g <= EXHAUSTIVE_CHECK_ORDER {
            (0..g).flat_map(|a| (0..g).map(move |b| (a, b))).collect()
        } else {
            (0..1024usize).map(|i| (i.wrapping_mul(40503) % g, i.wrapping_mul(2654435761) % g)).collect()
        };
        for (a, b) in pairs {
            if self.images[a].mul(&self.images[b]) != self.images[self.group.mul(a, b)] {
                return Err(Error::invalid("not a homomorphism"));
            }
        }
        for m in &self.images {
            if m.rank() != self.degree {
                return Err(Error::invalid("representation image not invertible"));
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self) -> &[Matrix<Cyclotomic>] {
        &self.images
    }

    pub fn image(&self, x: usize) -> &Matrix<Cyclotomic> {
        &self.images[x]
    }

    /// Traces per class; asserts the trace is constant on each class.
    pub fn character(&self) -> Character {
        let trace = |m: &Matrix<Cyclotomic>| (0..m.rows()).fold(Cyclotomic::zero(), |acc, i| acc.add(m.get(i, i)));
        let values = self
            .group
            .classes()
            .iter()
            .map(|members| {
                let v = trace(&self.images[members[0]]);
                for &y in &members[1..] {
                    assert_eq!(trace(&self.images[y]), v, "character not a class function");
                }
                v
            })
            .collect();
        Character { values }
    }

    /// Block-diagonal sum of the given representations of one group.
    pub fn direct_sum(parts: &[&Representation]) -> Result<Representation> {
        let Some(first) = parts.first() else {
            return Err(Error::invalid("direct sum of no representations"));
        };
        let group = first.group.clone();
        if parts.iter().any(|r| r.group != group) {
            return Err(Error::invalid("direct sum of representations of different groups"));
        }
        let degree = parts.iter().map(|r| r.degree).sum();
        let images = (0..group.order())
            .map(|x| {
                let mut m = Matrix::zeros(degree, degree);
                let mut off = 0;
                for r in parts {
                    let b = &r.images[x];
                    for i in 0..r.degree {
                        for j in 0..r.degree {
                            m.set(off + i, off + j, b.get(i, j).clone());
                        }
                    }
                    off += r.degree;
                }
                m
            })
            .collect();
        Ok(Representation { group, degree, images })
    }

    /// The zero-dimensional representation.
    pub fn zero(group: Arc<FiniteGroup>) -> Representation {
        let images = vec![Matrix::zeros(0, 0); group.order()];
        Representation { group, degree: 0, images }
    }
}

/// Left translation on `C[G]`: `M_x e_y = e_{xy}`.
pub fn regular_representation(group: &Arc<FiniteGroup>) -> Representation {
    let g = group.order();
    let images = (0..g)
        .map(|x| {
            let mut m = Matrix::zeros(g, g);
            for y in 0..g {
                m.set(group.mul(x, y), y, Cyclotomic::one());
            }
            m
        })
        .collect();
    Representation::new_unchecked(group.clone(), g, images)
}

/// `(1/g) Σ_x action[x]`.
pub fn reynolds_matrix(action: &[Matrix<Cyclotomic>]) -> Matrix<Cyclotomic> {
    let first = &action[0];
    let mut sum = Matrix::zeros(first.rows(), first.cols());
    for m in action {
        sum = sum.add(m);
    }
    sum.scale(&Cyclotomic::from_rational(Rational::new(1, action.len() as i64)))
}

/// Action of each element on the graded-lex monomial basis of `Sym^d(V)`.
///
/// Variable `j` maps to the linear form given by column `j` of `ρ(x)`.
pub fn sym_power_action(rep: &Representation, d: usize, basis_limit: usize) -> Result<Vec<Matrix<Cyclotomic>>> {
    let size = monomial_count(rep.degree(), d);
    if size > basis_limit as u128 {
        return Err(Error::limit(format!("degree too large: {size} monomials exceeds limit {basis_limit}")));
    }
    let basis = monomials_of_degree(rep.degree(), d);
    let index: std::collections::HashMap<&[u8], usize> = basis.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let n = basis.len();
    Ok(rep
        .images()
        .iter()
        .map(|img| {
            let forms = variable_images(img);
            let mut m = Matrix::zeros(n, n);
            for (c, mono) in basis.iter().enumerate() {
                for (target, coeff) in apply_to_monomial(&forms, mono) {
                    m.set(index[target.as_slice()], c, coeff);
                }
            }
            m
        })
        .collect())
}
