//! Dense exact linear algebra over a [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// A dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows × cols");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn from_columns(columns: Vec<Vec<F>>, rows: usize) -> Self {
        Self::from_rows(columns, rows).transpose()
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect(), cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(F::zero(), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc.add(&a.mul(b))
                    }
                })
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Matrix { rows: self.rows, cols, data }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack needs equal column counts");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref<F> {
        let mut rows = self.to_rows();
        let pivots = eliminate(&mut rows, self.cols, true);
        let rank = pivots.len();
        Rref { matrix: Matrix::from_rows(rows, self.cols), pivot_columns: pivots, rank }
    }

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut rows = if self.rows <= self.cols { self.to_rows() } else { self.transpose().to_rows() };
        let width = rows.first().map_or(0, Vec::len);
        eliminate(&mut rows, width, false).len()
    }

    pub fn image_dim(&self) -> usize {
        self.rank()
    }

    /// Columns form a basis of the null space `{x : self·x = 0}`.
    pub fn kernel_basis(&self) -> Self {
        let Rref { matrix: r, pivot_columns, rank } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_columns.contains(c)).collect();
        let mut columns = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![F::zero(); self.cols];
            v[f] = F::one();
            for (i, &p) in pivot_columns.iter().enumerate() {
                v[p] = r.get(i, f).neg();
            }
            columns.push(v);
        }
        let k = Matrix::from_columns(columns, self.cols);
        assert_eq!(self.cols, rank + k.cols(), "rank–nullity violated");
        k
    }

    /// Some `x` with `self·x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut rows: Vec<Vec<F>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let pivots = eliminate(&mut rows, self.cols + 1, true);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = rows[i][self.cols].clone();
        }
        Some(x)
    }
}

/// `rank(ambient) − rank(sub)`, checking that the columns of `sub` lie in the
/// column space of `ambient`.
pub fn quotient_dim<F: Field>(ambient: &Matrix<F>, sub: &Matrix<F>) -> Result<usize> {
    let ra = ambient.rank();
    let rs = sub.rank();
    if sub.cols() > 0 {
        if ambient.rows() != sub.rows() {
            return Err(Error::invalid("ambient and sub bases live in different spaces"));
        }
        if ambient.hstack(sub).rank() > ra {
            return Err(Error::invalid("sub not contained in ambient"));
        }
    }
    Ok(ra - rs)
}

/// Gaussian elimination in place on `rows`; returns pivot columns.
///
/// Pivots are the nonzero candidates of smallest bit size. With `reduce`,
/// produces the reduced row echelon form; otherwise only the row echelon form
/// (pivot rows are then not normalized).
fn eliminate<F: Field>(rows: &mut Vec<Vec<F>>, width: usize, reduce: bool) -> Vec<usize> {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == n {
            break;
        }
        let best = (r..n)
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].bit_size());
        let Some(best) = best else { continue };
        rows.swap(r, best);
        if reduce {
            let inv = rows[r][c].inv().expect("nonzero pivot");
            if !rows[r][c].sub(&F::one()).is_zero() {
                for x in rows[r][c..].iter_mut() {
                    if !x.is_zero() {
                        *x = x.mul(&inv);
                    }
                }
            }
        }
        let pivot_inv = if reduce { None } else { rows[r][c].inv() };
        if reduce {
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r {
                    eliminate_row(row, &pivot, c, None);
                }
            }
        } else {
            let pivot = rows[r].clone();
            for row in rows[r + 1..].iter_mut() {
                eliminate_row(row, &pivot, c, pivot_inv.as_ref());
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn eliminate_row<F: Field>(row: &mut [F], pivot: &[F], c: usize, pivot_inv: Option<&F>) {
    if row[c].is_zero() {
        return;
    }
    let factor = match pivot_inv {
        Some(inv) => row[c].mul(inv),
        None => row[c].clone(),
    };
    for j in c..row.len() {
        if !pivot[j].is_zero() {
            row[j] = row[j].sub(&factor.mul(&pivot[j]));
        }
    }
}

/// A row space kept in reduced echelon form, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct EchelonSpan<F> {
    width: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonSpan<F> {
    pub fn new(width: usize) -> Self {
        EchelonSpan { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    /// Residue of `v` after clearing every pivot coordinate.
    fn residue(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (x, y) in w.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.residue(v).iter().all(F::is_zero)
    }

    /// Adds `v` to the span; returns `false` if it was already contained.
    pub fn insert(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.width);
        let mut w = self.residue(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero");
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&w) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, w);
        true
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}×{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use proptest::prelude::*;

    type Q = Rational;

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_i64(rows)
    }

    #[test]
    fn rref_examples() {
        let r = m(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!((r.rank, r.pivot_columns.clone()), (1, vec![0]));
        assert_eq!(r.matrix, m(&[&[1, 2], &[0, 0]]));
        let id = Matrix::<Q>::identity(3);
        let r = id.rref();
        assert_eq!((r.matrix.clone(), r.rank), (id, 3));
        let r = m(&[&[0, 1], &[1, 0]]).rref();
        assert_eq!((r.matrix, r.rank), (Matrix::identity(2), 2));
    }

    #[test]
    fn kernel_examples() {
        let k = m(&[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![Q::from_integer(-2), Q::from_integer(1)]);
        assert_eq!(Matrix::<Q>::identity(3).kernel_basis().cols(), 0);
        assert_eq!(Matrix::<Q>::zeros(2, 3).kernel_basis().cols(), 3);
    }

    #[test]
    fn image_dim_examples() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).image_dim(), 1);
        assert_eq!(Matrix::<Q>::zeros(3, 4).image_dim(), 0);
    }

    #[test]
    fn quotient_dim_examples() {
        let id = Matrix::<Q>::identity(3);
        let first = Matrix::from_columns(vec![id.column(0)], 3);
        assert_eq!(quotient_dim(&id, &first).unwrap(), 2);
        assert_eq!(quotient_dim(&id, &id).unwrap(), 0);
        let amb = m(&[&[1, 0], &[0, 1], &[0, 0]]);
        let sum = m(&[&[1], &[1], &[0]]);
        assert_eq!(quotient_dim(&amb, &sum).unwrap(), 1);
        let outside = m(&[&[0], &[0], &[1]]);
        assert_eq!(quotient_dim(&amb, &outside), Err(Error::invalid("sub not contained in ambient")));
    }

    #[test]
    fn solve_and_span() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = a.solve(&[Q::from_integer(3), Q::from_integer(1)]).unwrap();
        assert_eq!(x, vec![Q::from_integer(2), Q::from_integer(1)]);
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[Q::one(), Q::zero()]).is_none());
        let mut span = EchelonSpan::<Q>::new(3);
        assert!(span.insert(&[Q::one(), Q::one(), Q::zero()]));
        assert!(span.insert(&[Q::zero(), Q::one(), Q::one()]));
        assert!(!span.insert(&[Q::one(), Q::from_integer(2), Q::one()]));
        assert!(span.contains(&[Q::one(), Q::zero(), Q::from_integer(-1)]));
        assert_eq!(span.pivots(), &[0, 1]);
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix<Q>> {
        (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
            prop::collection::vec((-3i64..=3, 1i64..=3), r * c)
                .prop_map(move |v| Matrix::new(r, c, v.into_iter().map(|(n, d)| Q::new(n, d)).collect()))
        })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(a in arb_matrix()) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
            prop_assert_eq!(a.rank(), a.rref().rank);
        }

        #[test]
        fn rank_nullity_and_kernel(a in arb_matrix()) {
            let k = a.kernel_basis();
            prop_assert_eq!(a.cols(), a.rank() + k.cols());
            prop_assert!(a.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn rref_idempotent(a in arb_matrix()) {
            let r = a.rref().matrix;
            prop_assert_eq!(r.rref().matrix, r);
        }
    }
}
