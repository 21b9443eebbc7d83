//! Dense matrices over a [`Scalar`] field.
//!
//! Index convention throughout the crate: the lower index of a structure
//! constant or automorphism entry is the row, the upper index is the column.
//! Linear maps act on row vectors from the right, so `v * B` is the image of
//! `v` and the matrix of "first `B`, then `C`" is `B * C`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Float, One, ToPrimitive, Zero};

use crate::error::LinalgError;
use crate::scalar::{Rational, Scalar, Tolerance};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Exact rational matrix.
pub type QMatrix = Matrix<Rational>;
/// Double-precision matrix.
pub type FMatrix = Matrix<f64>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LinalgError::Ragged);
        }
        let nrows = rows.len();
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from row vectors of a known width (allows zero rows).
    pub fn from_row_vectors(cols: usize, rows: &[Vec<T>]) -> Result<Self, LinalgError> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Ragged);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i].clone() } else { T::zero() })
    }

    /// Weyl basis matrix `E_i^j` (0-based): a single 1 in row `i`, column `j`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, T::one());
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, op: &'static str, f: impl Fn(&T, &T) -> T) -> Result<Self, LinalgError> {
        if self.shape() != rhs.shape() {
            return Err(LinalgError::DimensionMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.zip_with(rhs, "add", |a, b| a.clone() + b.clone())
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.zip_with(rhs, "sub", |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = vec![T::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.clone() + vi.clone() * self.get(i, j).clone();
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Result<Self, LinalgError> {
        self.require_square()?;
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_negligible(&self, tol: Tolerance) -> bool {
        self.data.iter().all(|x| x.is_negligible(tol))
    }

    /// Largest entrywise absolute difference; infinite on shape mismatch.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        if self.shape() != rhs.shape() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a.clone() - b.clone()).magnitude())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, rhs: &Self, tol: Tolerance) -> bool {
        if T::EXACT {
            self == rhs
        } else {
            self.max_abs_diff(rhs) <= tol.0
        }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Stacks `self` on top of `below`.
    pub fn vstack(&self, below: &Self) -> Result<Self, LinalgError> {
        if self.cols != below.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "vstack",
                left: self.shape(),
                right: below.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn hstack(&self, right: &Self) -> Result<Self, LinalgError> {
        Ok(self.transpose().vstack(&right.transpose())?.transpose())
    }

    pub(crate) fn require_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn pivot_row(&self, col: usize, from: usize, tol: Tolerance) -> Option<usize> {
        if T::EXACT {
            (from..self.rows).find(|&r| !self.get(r, col).is_zero())
        } else {
            (from..self.rows)
                .filter(|&r| !self.get(r, col).is_negligible(tol))
                .max_by(|&a, &b| {
                    self.get(a, col)
                        .magnitude()
                        .total_cmp(&self.get(b, col).magnitude())
                })
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref_with(&self, tol: Tolerance) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = m.pivot_row(c, r, tol) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = T::one() / m.get(r, c).clone();
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            if !T::EXACT {
                for i in 0..m.rows {
                    if i != r && m.get(i, c).is_negligible(tol) {
                        m.set(i, c, T::zero());
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        self.rref_with(Tolerance::default())
    }

    pub fn rank_with(&self, tol: Tolerance) -> usize {
        self.rref_with(tol).1.len()
    }

    pub fn rank(&self) -> usize {
        self.rank_with(Tolerance::default())
    }

    /// Basis of `{x : self * x = 0}` as column vectors (returned as `Vec`s).
    pub fn nullspace_with(&self, tol: Tolerance) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref_with(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![T::zero(); self.cols];
                x[f] = T::one();
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = -r.get(row, f).clone();
                }
                x
            })
            .collect()
    }

    pub fn nullspace(&self) -> Vec<Vec<T>> {
        self.nullspace_with(Tolerance::default())
    }

    /// Basis of `{y : y * self = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<T>> {
        self.transpose().nullspace()
    }

    /// Determinant by Gaussian elimination (partial pivoting for floats).
    pub fn det(&self) -> Result<T, LinalgError> {
        self.require_square()?;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = T::one();
        for c in 0..n {
            let p = if T::EXACT {
                (c..n).find(|&r| !m.get(r, c).is_zero())
            } else {
                (c..n)
                    .filter(|&r| !m.get(r, c).is_zero())
                    .max_by(|&a, &b| m.get(a, c).magnitude().total_cmp(&m.get(b, c).magnitude()))
            };
            let Some(p) = p else {
                return Ok(T::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = det * pivot.clone();
            for i in c + 1..n {
                let f = m.get(i, c).clone() / pivot.clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).clone() - f.clone() * m.get(c, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse_with(&self, tol: Tolerance) -> Result<Self, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n))?;
        let (r, pivots) = aug.rref_with(tol);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        Ok(r.submatrix(0, n, n, n))
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        self.inverse_with(Tolerance::default())
    }

    /// Exponential of a nilpotent matrix as the finite series `sum M^k / k!`.
    pub fn exp_nilpotent(&self) -> Result<Self, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        let mut result = Self::identity(n);
        let mut term = Self::identity(n);
        for k in 1..=n {
            term = term.try_mul(self)?.scale(&(T::one() / T::from_i64(k as i64)));
            if term.is_zero_matrix() {
                return Ok(result);
            }
            result = result.try_add(&term)?;
        }
        // term is now M^n / n!, which vanishes for every nilpotent n x n matrix
        Err(LinalgError::NotNilpotent { power: n })
    }

    /// Smallest `k` with `M^k = 0` (exact test), if any `k <= n` works.
    pub fn nilpotency_index(&self) -> Option<usize> {
        if !self.is_square() {
            return None;
        }
        let mut p = Self::identity(self.rows);
        for k in 1..=self.rows {
            p = p.try_mul(self).ok()?;
            if p.is_zero_matrix() {
                return Some(k);
            }
        }
        if self.rows == 0 {
            Some(0)
        } else {
            None
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }

    /// Coefficients `[c_0, ..., c_n]` of `det(xI - M)`, lowest degree first
    /// (Faddeev-LeVerrier).
    pub fn char_poly(&self) -> Result<Vec<T>, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            m = self.try_mul(&m)?;
            for i in 0..n {
                let v = m.get(i, i).clone() + coeffs[n - k + 1].clone();
                m.set(i, i, v);
            }
            let am = self.try_mul(&m)?;
            coeffs[n - k] = -(am.trace() / T::from_i64(k as i64));
        }
        Ok(coeffs)
    }
}

impl<T: Scalar + Float> Matrix<T> {
    fn norm_inf(&self) -> T {
        (0..self.rows)
            .map(|i| self.row(i).iter().fold(T::zero(), |acc, x| acc + x.abs()))
            .fold(T::zero(), T::max)
    }

    /// Matrix exponential by scaling and squaring with a Taylor core.
    ///
    /// The scaled matrix has infinity norm at most 1/4, where 24 Taylor
    /// terms put the truncation error far below `f64` resolution.
    pub fn expm(&self) -> Result<Self, LinalgError> {
        self.require_square()?;
        if self.data.iter().any(|x| !x.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        let n = self.rows;
        let norm = self.norm_inf();
        let quarter = T::from(0.25).unwrap();
        let mut squarings = 0usize;
        let mut scaled = self.clone();
        if norm > quarter {
            squarings = (norm / quarter).log2().ceil().to_usize().unwrap_or(0);
            let factor = T::from(2.0).unwrap().powi(squarings as i32);
            scaled = self.scale(&(T::one() / factor));
        }
        let mut result = Self::identity(n);
        let mut term = Self::identity(n);
        for k in 1..=24 {
            term = term.try_mul(&scaled)?.scale(&(T::one() / T::from(k).unwrap()));
            result = result.try_add(&term)?;
            if term.norm_inf() <= T::epsilon() * result.norm_inf() {
                break;
            }
        }
        for _ in 0..squarings {
            result = result.try_mul(&result)?;
        }
        if result.data.iter().any(|x| !x.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        Ok(result)
    }
}

impl QMatrix {
    /// Converts an exact matrix to any scalar type.
    pub fn to_scalar<U: Scalar>(&self) -> Matrix<U> {
        self.map(U::from_rational)
    }

    /// Distinct rational eigenvalues, in increasing order.
    ///
    /// Candidates come from the rational root theorem; polynomials whose
    /// integer constant term exceeds `1e12` in magnitude only report `0`.
    pub fn rational_eigenvalues(&self) -> Result<Vec<Rational>, LinalgError> {
        let mut poly = self.char_poly()?;
        let mut out = Vec::new();
        let lead_zeros = poly.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            out.push(Rational::zero());
            poly.drain(..lead_zeros);
        }
        let lcm = poly
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = poly
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let (Some(c0), Some(cn)) = (ints[0].to_i64(), ints[ints.len() - 1].to_i64()) else {
            return Ok(out);
        };
        if ints.len() < 2 || c0.unsigned_abs() > 1_000_000_000_000 {
            return Ok(out);
        }
        let eval = |x: &Rational| {
            poly.iter()
                .rev()
                .fold(Rational::zero(), |acc, c| acc * x + c)
        };
        for p in divisors(c0.unsigned_abs()) {
            for q in divisors(cn.unsigned_abs()) {
                for sign in [1i64, -1] {
                    let x = Rational::new(BigInt::from(sign * p as i64), BigInt::from(q));
                    if !out.contains(&x) && eval(&x).is_zero() {
                        out.push(x);
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: Self) -> Matrix<T> {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: Self) -> Matrix<T> {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: Self) -> Matrix<T> {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

/// Rows of whitespace-separated entries, one row per line.
impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn q(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn characteristic_polynomial_and_rational_roots() {
        let m = q(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, -3]]);
        // (x-2)^2 (x+3) = x^3 - x^2 - 8x + 12
        assert_eq!(m.char_poly().unwrap(), vec![int(12), int(-8), int(-1), int(1)]);
        assert_eq!(m.rational_eigenvalues().unwrap(), vec![int(-3), int(2)]);
        let half = QMatrix::from_diagonal(&[frac(1, 2), int(0), frac(-2, 3)]);
        assert_eq!(
            half.rational_eigenvalues().unwrap(),
            vec![frac(-2, 3), int(0), frac(1, 2)]
        );
        let rot = q(&[&[0, 1], &[-1, 0]]);
        assert!(rot.rational_eigenvalues().unwrap().is_empty());
    }

    #[test]
    fn rref_and_nullspace() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r.row(0), &[int(1), int(0), int(1)]);
        assert_eq!(r.row(1), &[int(0), int(1), int(1)]);
        let ns = m.nullspace();
        assert_eq!(ns, vec![vec![int(-1), int(-1), int(1)]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn det_and_inverse() {
        let m = q(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det().unwrap(), int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(2));
        assert_eq!(q(&[&[1, 2], &[2, 4]]).inverse(), Err(LinalgError::Singular));
        assert_eq!(q(&[&[0, 1], &[1, 0]]).det().unwrap(), int(-1));
    }

    #[test]
    fn nilpotent_exponential() {
        let mut m = QMatrix::zeros(2, 2);
        m.set(1, 0, frac(3, 2));
        let e = m.exp_nilpotent().unwrap();
        assert_eq!(e, q(&[&[1, 0], &[0, 1]]).try_add(&m).unwrap());
        let not_nil = QMatrix::identity(3);
        assert_eq!(not_nil.exp_nilpotent(), Err(LinalgError::NotNilpotent { power: 3 }));
    }

    #[test]
    fn numeric_exponential_of_diagonal() {
        let eps = std::f64::consts::LN_2;
        let m = FMatrix::from_diagonal(&[0.0, eps, -eps, 0.0]);
        let e = m.expm().unwrap();
        let want = FMatrix::from_diagonal(&[1.0, 2.0, 0.5, 1.0]);
        assert!(e.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn numeric_exponential_of_rotation() {
        let t = 5.0_f64;
        let m = FMatrix::from_rows(vec![vec![0.0, t], vec![-t, 0.0]]).unwrap();
        let e = m.expm().unwrap();
        let want = FMatrix::from_rows(vec![vec![t.cos(), t.sin()], vec![-t.sin(), t.cos()]]).unwrap();
        assert!(e.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let m = q(&[&[1, 1], &[0, 1]]);
        assert_eq!(m.pow(5).unwrap(), q(&[&[1, 5], &[0, 1]]));
        assert_eq!(m.pow(0).unwrap(), QMatrix::identity(2));
    }
}
