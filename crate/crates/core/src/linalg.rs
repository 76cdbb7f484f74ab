//! Dense exact linear algebra over a field, generic in the scalar.
//!
//! Used with [`GaussianRational`] entries for constant matrices and with
//! [`RatFunc`] entries for matrices over the function field. Elimination
//! picks, within a column, the nonzero pivot of least [`FieldScalar::pivot_cost`]
//! to keep intermediate polynomial degrees small.

use crate::error::{Error, Result};
use crate::ratfield::{GaussianRational, RatFunc};

/// Field operations required by the elimination routines.
pub trait FieldScalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Division by a nonzero element.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Pivot-size heuristic; lower is preferred.
    fn pivot_cost(&self) -> usize {
        0
    }
}

impl FieldScalar for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl FieldScalar for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pivot_cost(&self) -> usize {
        self.total_degree()
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: FieldScalar> Mat<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for k in 0..n {
            *m.at_mut(k, k) = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn map<U: FieldScalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Fallible entrywise map, preserving shape.
    pub fn try_map<U: FieldScalar>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Mat<U>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    /// Extracts the submatrix with the given (0-based) row and column indices.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Mat<T> {
        Mat::from_fn(row_idx.len(), col_idx.len(), |r, c| {
            self.at(row_idx[r], col_idx[c]).clone()
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| self.at(r, c).add(rhs.at(r, c)))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| self.at(r, c).sub(rhs.at(r, c)))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        Mat::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(r, k).mul(rhs.at(k, c)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(r, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn pow(&self, e: usize) -> Result<Self> {
        let n = self.require_square()?;
        let mut acc = Self::identity(n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    /// `self - z * I` for square matrices.
    pub fn sub_scalar_diag(&self, z: &T) -> Result<Self> {
        let n = self.require_square()?;
        let mut out = self.clone();
        for k in 0..n {
            *out.at_mut(k, k) = out.at(k, k).sub(z);
        }
        Ok(out)
    }
}

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref<T: FieldScalar>(m: &mut Mat<T>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        // best nonzero pivot in this column at or below `row`
        let pivot_row = (row..m.rows)
            .filter(|&r| !m.at(r, col).is_zero())
            .min_by_key(|&r| m.at(r, col).pivot_cost());
        let Some(p) = pivot_row else { continue };
        if p != row {
            for c in 0..m.cols {
                m.data.swap(p * m.cols + c, row * m.cols + c);
            }
        }
        let inv = T::one().div(m.at(row, col));
        for c in col..m.cols {
            *m.at_mut(row, c) = m.at(row, c).mul(&inv);
        }
        for r in 0..m.rows {
            if r != row && !m.at(r, col).is_zero() {
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    let delta = factor.mul(m.at(row, c));
                    *m.at_mut(r, c) = m.at(r, c).sub(&delta);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<T: FieldScalar>(m: &Mat<T>) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Determinant by Gaussian elimination with exact division.
pub fn det<T: FieldScalar>(m: &Mat<T>) -> Result<T> {
    let n = m.require_square()?;
    let mut work = m.clone();
    let mut acc = T::one();
    let mut sign_flip = false;
    for col in 0..n {
        let pivot_row = (col..n)
            .filter(|&r| !work.at(r, col).is_zero())
            .min_by_key(|&r| work.at(r, col).pivot_cost());
        let Some(p) = pivot_row else { return Ok(T::zero()) };
        if p != col {
            for c in 0..n {
                work.data.swap(p * n + c, col * n + c);
            }
            sign_flip = !sign_flip;
        }
        let pivot = work.at(col, col).clone();
        acc = acc.mul(&pivot);
        for r in (col + 1)..n {
            if work.at(r, col).is_zero() {
                continue;
            }
            let factor = work.at(r, col).div(&pivot);
            for c in col..n {
                let delta = factor.mul(work.at(col, c));
                *work.at_mut(r, c) = work.at(r, c).sub(&delta);
            }
        }
    }
    Ok(if sign_flip { acc.neg() } else { acc })
}

/// Solves `A X = B` for square invertible `A`; `None` when singular.
pub fn solve<T: FieldScalar>(a: &Mat<T>, b: &Mat<T>) -> Result<Option<Mat<T>>> {
    let n = a.require_square()?;
    if b.rows() != n {
        return Err(Error::DimensionMismatch("solve: row counts differ".into()));
    }
    let mut aug = Mat::from_fn(n, n + b.cols(), |r, c| {
        if c < n {
            a.at(r, c).clone()
        } else {
            b.at(r, c - n).clone()
        }
    });
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
        return Ok(None);
    }
    Ok(Some(Mat::from_fn(n, b.cols(), |r, c| aug.at(r, n + c).clone())))
}

pub fn inverse<T: FieldScalar>(a: &Mat<T>) -> Result<Option<Mat<T>>> {
    let n = a.require_square()?;
    solve(a, &Mat::identity(n))
}

/// Nullspace basis, each vector normalized to first nonzero entry = 1.
pub fn nullspace<T: FieldScalar>(m: &Mat<T>) -> Vec<Vec<T>> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![T::zero(); m.cols];
        v[f] = T::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = work.at(r, f).neg();
        }
        basis.push(normalize_first_nonzero(v));
    }
    basis
}

/// Scales a vector so its first nonzero entry equals one.
pub fn normalize_first_nonzero<T: FieldScalar>(v: Vec<T>) -> Vec<T> {
    match v.iter().find(|x| !x.is_zero()) {
        None => v,
        Some(lead) => {
            let inv = T::one().div(lead);
            v.iter().map(|x| x.mul(&inv)).collect()
        }
    }
}

/// Rank of the column span of `vectors` (given as rows here).
pub fn span_rank<T: FieldScalar>(vectors: &[Vec<T>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = Mat::from_rows(vectors.to_vec()).expect("uniform lengths");
    rank(&m)
}

/// True when `v` lies in the span of `basis`.
pub fn in_span<T: FieldScalar>(basis: &[Vec<T>], v: &[T]) -> bool {
    let r0 = span_rank(basis);
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_rank(&all) == r0
}

/// Embeds a constant matrix into the function field.
pub fn lift_constant(m: &Mat<GaussianRational>) -> Mat<RatFunc> {
    m.map(|c| RatFunc::constant(c.clone()))
}

/// Extracts the constant matrix when every entry is constant.
pub fn as_constant(m: &Mat<RatFunc>) -> Result<Mat<GaussianRational>> {
    m.try_map(|f| f.as_constant().ok_or(Error::NotConstantMatrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::parse_ratfunc;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn det_and_inverse_exact() {
        let m = Mat::from_rows(vec![
            vec![g(1), g(2)],
            vec![g(3), g(5)],
        ])
        .unwrap();
        assert_eq!(det(&m).unwrap(), g(-1));
        let inv = inverse(&m).unwrap().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
    }

    #[test]
    fn nullspace_of_rank_deficient() {
        let m = Mat::from_rows(vec![
            vec![g(1), g(2), g(3)],
            vec![g(2), g(4), g(6)],
        ])
        .unwrap();
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let out = m.mul_vec(v);
            assert!(out.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn det_over_function_field() {
        let l = parse_ratfunc("l").unwrap();
        let one = RatFunc::one();
        // det [[l, 1], [1, l]] = l^2 - 1
        let m = Mat::from_rows(vec![vec![l.clone(), one.clone()], vec![one, l]]).unwrap();
        assert_eq!(det(&m).unwrap(), parse_ratfunc("l^2-1").unwrap());
    }

    #[test]
    fn solve_rejects_singular() {
        let m = Mat::from_rows(vec![vec![g(1), g(1)], vec![g(1), g(1)]]).unwrap();
        assert!(solve(&m, &Mat::identity(2)).unwrap().is_none());
    }
}
