//! Dense exact linear algebra over an arbitrary field, used for generator
//! matrices over Q(q), rank certificates, and the cellular expansion solver.
//!
//! Elimination picks pivots of minimal complexity (for Q(q): smallest degree
//! span) because polynomial growth, not numerics, is the cost driver.

use crate::scalar::{Rat, Scalar};
use num::{One, Signed, Zero};

/// Field operations needed by the elimination routines.
pub trait FieldElem: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Pivot-selection weight; smaller is better.
    fn complexity(&self) -> u64 {
        0
    }
}

impl FieldElem for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Scalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Scalar::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Scalar::mul(self, other)
    }
    fn div(&self, other: &Self) -> Self {
        Scalar::div(self, other).expect("division by zero pivot")
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn complexity(&self) -> u64 {
        Scalar::complexity(self)
    }
}

impl FieldElem for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn complexity(&self) -> u64 {
        self.numer().abs().bits() + self.denom().bits()
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: FieldElem> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out: Matrix<T> = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(T::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Is this c times the identity for some c? Returns the c if so.
    pub fn as_scalar_multiple_of_identity(&self) -> Option<T> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { c.clone() } else { T::zero() };
                if *self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn map<U: FieldElem>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Incrementally maintained row space in reduced echelon form; used for rank
/// growth certificates.
pub struct RowSpace<T> {
    dim: usize,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: FieldElem> RowSpace<T> {
    pub fn new(dim: usize) -> Self {
        RowSpace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce v against the span; insert the remainder when nonzero.
    /// Returns true when the rank grew.
    pub fn insert(&mut self, mut v: Vec<T>) -> bool {
        assert_eq!(v.len(), self.dim);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..self.dim {
                    if !row[j].is_zero() {
                        v[j] = v[j].sub(&f.mul(&row[j]));
                    }
                }
            }
        }
        let Some(p) = (0..self.dim).find(|&j| !v[j].is_zero()) else {
            return false;
        };
        let inv = v[p].clone();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.div(&inv);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

pub fn rank_of_rows<T: FieldElem>(rows: Vec<Vec<T>>) -> usize {
    let Some(dim) = rows.first().map(|r| r.len()) else {
        return 0;
    };
    let mut space = RowSpace::new(dim);
    for r in rows {
        space.insert(r);
    }
    space.rank()
}

/// Solution of a consistent linear system: one particular solution plus a basis
/// of the homogeneous solution space.
#[derive(Debug, Clone)]
pub struct AffineSolution<T> {
    pub particular: Vec<T>,
    pub nullspace: Vec<Vec<T>>,
}

/// Solve sum_j x_j * columns[j] = target. Returns None when inconsistent.
/// Pivots minimize FieldElem::complexity among candidates in the pivot column.
pub fn solve_affine<T: FieldElem>(columns: &[Vec<T>], target: &[T]) -> Option<AffineSolution<T>> {
    let m = columns.len();
    let n = target.len();
    assert!(columns.iter().all(|c| c.len() == n));
    // augmented rows: [A | b]
    let mut rows: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut row: Vec<T> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; m];
    let mut used_rows = vec![false; n];
    for col in 0..m {
        // best pivot by complexity
        let mut best: Option<(usize, u64)> = None;
        for (r, row) in rows.iter().enumerate() {
            if used_rows[r] || row[col].is_zero() {
                continue;
            }
            let w = row[col].complexity();
            if best.is_none_or(|(_, bw)| w < bw) {
                best = Some((r, w));
            }
        }
        let Some((r, _)) = best else {
            continue;
        };
        used_rows[r] = true;
        pivot_of_col[col] = Some(r);
        let inv = rows[r][col].clone();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.div(&inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (rr, row) in rows.iter_mut().enumerate() {
            if rr == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in 0..=m {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].sub(&f.mul(&pivot_row[j]));
                }
            }
        }
    }
    // consistency: no leftover row of the form [0 ... 0 | nonzero]
    for (r, row) in rows.iter().enumerate() {
        if !used_rows[r] && !row[m].is_zero() {
            return None;
        }
    }
    let mut particular = vec![T::zero(); m];
    for col in 0..m {
        if let Some(r) = pivot_of_col[col] {
            particular[col] = rows[r][m].clone();
        }
    }
    let mut nullspace = Vec::new();
    for free in 0..m {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![T::zero(); m];
        v[free] = T::one();
        for col in 0..m {
            if let Some(r) = pivot_of_col[col] {
                v[col] = rows[r][free].neg();
            }
        }
        nullspace.push(v);
    }
    Some(AffineSolution {
        particular,
        nullspace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn matrix_products() {
        let a = Matrix::from_rows(vec![vec![s("0"), s("q")], vec![s("1"), s("q - 1")]]);
        let sq = a.mul(&a);
        let expect = a
            .scale(&s("q - 1"))
            .add(&Matrix::identity(2).scale(&s("q")));
        assert_eq!(sq, expect);
    }

    #[test]
    fn rank_and_rowspace() {
        let rows = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(0), rat(1), rat(1)],
        ];
        assert_eq!(rank_of_rows(rows), 2);
    }

    #[test]
    fn solve_unique() {
        // x*(1,0) + y*(1,1) = (3,2) -> x=1, y=2
        let cols = vec![vec![rat(1), rat(0)], vec![rat(1), rat(1)]];
        let sol = solve_affine(&cols, &[rat(3), rat(2)]).unwrap();
        assert_eq!(sol.particular, vec![rat(1), rat(2)]);
        assert!(sol.nullspace.is_empty());
    }

    #[test]
    fn solve_inconsistent() {
        let cols = vec![vec![rat(1), rat(2)]];
        assert!(solve_affine(&cols, &[rat(1), rat(3)]).is_none());
    }

    #[test]
    fn solve_underdetermined_over_qq() {
        let cols = vec![
            vec![s("1"), s("0")],
            vec![s("q"), s("0")],
            vec![s("0"), s("1")],
        ];
        let sol = solve_affine(&cols, &[s("q + 1"), s("2")]).unwrap();
        assert_eq!(sol.nullspace.len(), 1);
        // verify particular solution
        let mut acc = vec![Scalar::zero(), Scalar::zero()];
        for (x, col) in sol.particular.iter().zip(&cols) {
            for (a, c) in acc.iter_mut().zip(col) {
                *a = a.add(&x.mul(c));
            }
        }
        assert_eq!(acc, vec![s("q + 1"), s("2")]);
    }
}
