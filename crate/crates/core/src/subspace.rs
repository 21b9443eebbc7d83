use std::fmt;

use num_traits::Zero;

use crate::matrix::QMatrix;
use crate::scalar::Rational;

/// A linear subspace of `Q^n`, stored as the nonzero rows of its reduced
/// row-echelon basis. The echelon form is canonical, so `==` is subspace
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: QMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: QMatrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_matrix(&QMatrix::identity(ambient_dim))
    }

    /// Span of the rows of `m`.
    pub fn from_matrix(m: &QMatrix) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.submatrix(0, 0, pivots.len(), m.ncols());
        Subspace {
            ambient_dim: m.ncols(),
            basis,
            pivots,
        }
    }

    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        let m = QMatrix::from_row_vectors(ambient_dim, vectors).expect("vector length mismatch");
        Self::from_matrix(&m)
    }

    /// Span of the standard basis vectors with the given 0-based indices.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let vecs: Vec<Vec<Rational>> = indices
            .iter()
            .map(|&i| unit_vector(ambient_dim, i))
            .collect();
        Self::span(ambient_dim, &vecs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Echelon basis, one vector per row.
    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let c: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        (self.basis.left_apply(&c) == v).then_some(c)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let m = self.basis.vstack(&other.basis).expect("ambient mismatch");
        Self::from_matrix(&m)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient_dim);
        }
        let stacked = self.basis.vstack(&other.basis).expect("ambient mismatch");
        let k = self.dim();
        let vecs: Vec<Vec<Rational>> = stacked
            .left_nullspace()
            .into_iter()
            .map(|y| self.basis.left_apply(&y[..k]))
            .collect();
        Self::span(self.ambient_dim, &vecs)
    }

    /// Image of the subspace under `v -> v * m`.
    pub fn image(&self, m: &QMatrix) -> Subspace {
        if self.is_zero() {
            return Subspace::zero(m.ncols());
        }
        Self::from_matrix(&(&self.basis * m))
    }

    /// Column vectors `q` with `v . q = 0` for all `v` in the subspace,
    /// arranged as the columns of an `n x (n - dim)` matrix.
    pub fn annihilator(&self) -> QMatrix {
        let n = self.ambient_dim;
        let ns = if self.is_zero() {
            (0..n).map(|i| unit_vector(n, i)).collect()
        } else {
            self.basis.nullspace()
        };
        QMatrix::from_row_vectors(n, &ns).expect("nullspace width").transpose()
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rows: Vec<String> = self
            .basis_vectors()
            .iter()
            .map(|v| format_vector(v))
            .collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::from_integer(1.into());
    v
}

/// Renders a coordinate vector as a combination of `X_1..X_n`.
pub fn format_vector(v: &[Rational]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = *c < Rational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != Rational::from_integer(1.into()) {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&format!("X_{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn canonical_equality() {
        let a = Subspace::span(3, &[vec![int(1), int(1), int(0)], vec![int(0), int(1), int(0)]]);
        let b = Subspace::coordinate(3, &[0, 1]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::coordinate(3, &[0, 1]);
        let b = Subspace::span(3, &[vec![int(0), int(1), int(1)], vec![int(1), int(0), int(0)]]);
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::coordinate(3, &[0]));
        assert!(a.sum(&b).is_full());
        assert!(a.contains(&[int(2), int(-3), int(0)]));
        assert!(!a.contains(&[int(0), int(0), int(1)]));
    }

    #[test]
    fn annihilator_of_coordinate_plane() {
        let a = Subspace::coordinate(3, &[0, 2]);
        let q = a.annihilator();
        assert_eq!(q.shape(), (3, 1));
        assert_eq!(q.column(0), vec![int(0), int(1), int(0)]);
        assert_eq!(Subspace::zero(2).annihilator(), QMatrix::identity(2));
    }

    #[test]
    fn vector_formatting() {
        assert_eq!(format_vector(&[int(1), int(0), int(-2)]), "X_1 - 2*X_3");
        assert_eq!(format_vector(&[int(0), int(0)]), "0");
    }
}
