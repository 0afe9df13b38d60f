//! Sparse matrices with both row and column access, over exact coefficients.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::int::Int;

pub trait Coeff: Clone + Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(v: i64) -> Self;
}

impl Coeff for Int {
    fn zero() -> Int {
        Int::zero()
    }
    fn one() -> Int {
        Int::one()
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
    fn add(&self, other: &Int) -> Int {
        self + other
    }
    fn mul(&self, other: &Int) -> Int {
        self * other
    }
    fn neg(&self) -> Int {
        -self
    }
    fn from_i64(v: i64) -> Int {
        Int::from(v)
    }
}

impl Coeff for BigRational {
    fn zero() -> BigRational {
        Zero::zero()
    }
    fn one() -> BigRational {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &BigRational) -> BigRational {
        self + other
    }
    fn mul(&self, other: &BigRational) -> BigRational {
        self * other
    }
    fn neg(&self) -> BigRational {
        -self
    }
    fn from_i64(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat<T: Coeff> {
    pub nrows: usize,
    pub ncols: usize,
    cols: Vec<BTreeMap<usize, T>>,
    rows: Vec<BTreeMap<usize, T>>,
}

impl<T: Coeff> SparseMat<T> {
    pub fn new(nrows: usize, ncols: usize) -> SparseMat<T> {
        SparseMat { nrows, ncols, cols: vec![BTreeMap::new(); ncols], rows: vec![BTreeMap::new(); nrows] }
    }

    pub fn from_triplets(nrows: usize, ncols: usize, entries: impl IntoIterator<Item = (usize, usize, T)>) -> SparseMat<T> {
        let mut m = SparseMat::new(nrows, ncols);
        for (r, c, v) in entries {
            m.add_to(r, c, &v);
        }
        m
    }

    pub fn identity(n: usize) -> SparseMat<T> {
        SparseMat::from_triplets(n, n, (0..n).map(|i| (i, i, T::one())))
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&T> {
        self.cols[c].get(&r)
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        if v.is_zero() {
            self.cols[c].remove(&r);
            self.rows[r].remove(&c);
        } else {
            self.cols[c].insert(r, v.clone());
            self.rows[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &T) {
        if v.is_zero() {
            return;
        }
        let new = match self.cols[c].get(&r) {
            Some(old) => old.add(v),
            None => v.clone(),
        };
        self.set(r, c, new);
    }

    pub fn col(&self, c: usize) -> &BTreeMap<usize, T> {
        &self.cols[c]
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, T> {
        &self.rows[r]
    }

    pub fn clear_col(&mut self, c: usize) {
        for r in std::mem::take(&mut self.cols[c]).into_keys() {
            self.rows[r].remove(&c);
        }
    }

    pub fn clear_row(&mut self, r: usize) {
        for c in std::mem::take(&mut self.rows[r]).into_keys() {
            self.cols[c].remove(&r);
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMat<T>) -> SparseMat<T> {
        assert_eq!(self.ncols, other.nrows, "product dimension mismatch");
        let mut out = SparseMat::new(self.nrows, other.ncols);
        for c in 0..other.ncols {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, v) in &other.cols[c] {
                for (r, u) in &self.cols[*k] {
                    let p = u.mul(v);
                    match acc.get_mut(r) {
                        Some(x) => *x = x.add(&p),
                        None => {
                            acc.insert(*r, p);
                        }
                    }
                }
            }
            for (r, v) in acc {
                if !v.is_zero() {
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &SparseMat<T>) -> SparseMat<T> {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = self.clone();
        for (r, c, v) in other.triplets() {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn scale(&self, s: &T) -> SparseMat<T> {
        SparseMat::from_triplets(self.nrows, self.ncols, self.triplets().map(|(r, c, v)| (r, c, v.mul(s))))
    }

    pub fn sub(&self, other: &SparseMat<T>) -> SparseMat<T> {
        self.add(&other.scale(&T::one().neg()))
    }

    pub fn transpose(&self) -> SparseMat<T> {
        SparseMat::from_triplets(self.ncols, self.nrows, self.triplets().map(|(r, c, v)| (c, r, v.clone())))
    }

    /// Submatrix on the given rows and columns, renumbered in order.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> SparseMat<T> {
        let mut row_pos = vec![usize::MAX; self.nrows];
        for (i, &r) in rows.iter().enumerate() {
            row_pos[r] = i;
        }
        let mut out = SparseMat::new(rows.len(), cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for (r, v) in &self.cols[c] {
                if row_pos[*r] != usize::MAX {
                    out.set(row_pos[*r], j, v.clone());
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut d = vec![vec![T::zero(); self.ncols]; self.nrows];
        for (r, c, v) in self.triplets() {
            d[r][c] = v.clone();
        }
        d
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply(&self, v: &BTreeMap<usize, T>) -> BTreeMap<usize, T> {
        let mut out: BTreeMap<usize, T> = BTreeMap::new();
        for (c, x) in v {
            for (r, a) in &self.cols[*c] {
                let p = a.mul(x);
                let e = out.entry(*r).or_insert_with(T::zero);
                *e = e.add(&p);
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }
}

impl SparseMat<Int> {
    pub fn to_rational(&self) -> SparseMat<BigRational> {
        SparseMat::from_triplets(self.nrows, self.ncols, self.triplets().map(|(r, c, v)| (r, c, v.to_rational())))
    }
}

impl SparseMat<BigRational> {
    /// The integral matrix with the same entries, if every entry is integral.
    pub fn to_integer(&self) -> Option<SparseMat<Int>> {
        let mut out = SparseMat::new(self.nrows, self.ncols);
        for (r, c, v) in self.triplets() {
            out.set(r, c, Int::from_rational(v)?);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let a = SparseMat::<Int>::from_triplets(2, 2, [(0, 0, Int::from(1)), (0, 1, Int::from(2)), (1, 1, Int::from(3))]);
        let i = SparseMat::identity(2);
        assert_eq!(a.mul(&i), a);
        let sq = a.mul(&a);
        assert_eq!(sq.get(0, 1), Some(&Int::from(8)));
        assert_eq!(sq.get(1, 0), None);
        let z = a.sub(&a);
        assert!(z.is_zero());
        assert_eq!(z.nnz(), 0);
    }

    #[test]
    fn row_col_views_stay_in_sync() {
        let mut a = SparseMat::<Int>::new(3, 3);
        a.add_to(0, 1, &Int::from(2));
        a.add_to(0, 1, &Int::from(-2));
        assert!(a.row(0).is_empty() && a.col(1).is_empty());
        a.set(2, 2, Int::from(5));
        a.set(1, 2, Int::from(4));
        a.clear_row(2);
        assert_eq!(a.col(2).len(), 1);
        a.clear_col(2);
        assert!(a.row(1).is_empty());
    }
}
