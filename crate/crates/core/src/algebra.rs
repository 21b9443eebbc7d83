//! Lie algebras given by structure constants, and their structural invariants.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::scalar::{Rational, Scalar};
use crate::subspace::{format_vector, unit_vector, Subspace};

/// Structure constants `c_{ij}^k` stored for `i < j` only (0-based).
///
/// Antisymmetry is implicit: `c_{ji}^k = -c_{ij}^k` and `c_{ii}^k = 0`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct StructureTensor {
    dim: usize,
    brackets: BTreeMap<(usize, usize), BTreeMap<usize, Rational>>,
}

impl StructureTensor {
    pub fn new(dim: usize) -> Self {
        StructureTensor {
            dim,
            brackets: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `c` to `c_{ij}^k`; duplicate entries accumulate.
    pub fn add(&mut self, i: usize, j: usize, k: usize, c: Rational) -> Result<()> {
        for idx in [i, j, k] {
            if idx >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index: idx + 1,
                    dim: self.dim,
                });
            }
        }
        if i >= j {
            return Err(Error::UnorderedBracket { i: i + 1, j: j + 1 });
        }
        let row = self.brackets.entry((i, j)).or_default();
        let v = row.remove(&k).unwrap_or_else(Rational::zero) + c;
        if !v.is_zero() {
            row.insert(k, v);
        }
        if row.is_empty() {
            self.brackets.remove(&(i, j));
        }
        Ok(())
    }

    /// `c_{ij}^k` for any ordered pair.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Rational::zero(),
            Less => self
                .brackets
                .get(&(i, j))
                .and_then(|r| r.get(&k))
                .cloned()
                .unwrap_or_else(Rational::zero),
            Greater => -self.get(j, i, k),
        }
    }

    /// Nonzero constants `(i, j, k, c)` with `i < j`, in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.brackets
            .iter()
            .flat_map(|(&(i, j), row)| row.iter().map(move |(&k, c)| (i, j, k, c)))
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Dense antisymmetric array indexed `(i * R + j) * R + k`.
    pub fn dense<T: Scalar>(&self) -> Vec<T> {
        let r = self.dim;
        let mut out = vec![T::zero(); r * r * r];
        for (i, j, k, c) in self.entries() {
            let v = T::from_rational(c);
            out[(j * r + i) * r + k] = -v.clone();
            out[(i * r + j) * r + k] = v;
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JacobiViolation {
    /// 0-based basis triple `i < j < k`.
    pub triple: (usize, usize, usize),
    pub residual: Vec<Rational>,
}

/// A finite-dimensional Lie algebra over `Q` with a fixed basis `X_1..X_R`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra {
    tensor: StructureTensor,
    label: Option<String>,
    basis_names: Option<Vec<String>>,
}

impl LieAlgebra {
    /// Builds an algebra from 1-based table entries `(i, j, k, c_{ij}^k)` with
    /// `i < j`, and rejects inputs violating the Jacobi identity.
    pub fn new(dim: usize, brackets: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let alg = Self::new_unchecked(dim, brackets)?;
        if let Some(v) = alg.check_jacobi().first() {
            return Err(Error::Jacobi(format!(
                "at ({},{},{}): residual {}",
                v.triple.0 + 1,
                v.triple.1 + 1,
                v.triple.2 + 1,
                format_vector(&v.residual)
            )));
        }
        Ok(alg)
    }

    /// Like [`LieAlgebra::new`] but without the Jacobi check.
    pub fn new_unchecked(dim: usize, brackets: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut t = StructureTensor::new(dim);
        for (i, j, k, c) in brackets {
            if *i == 0 || *j == 0 || *k == 0 {
                return Err(Error::IndexOutOfRange { index: 0, dim });
            }
            t.add(i - 1, j - 1, k - 1, c.clone())?;
        }
        Ok(Self::from_tensor(t))
    }

    pub fn from_tensor(tensor: StructureTensor) -> Self {
        LieAlgebra {
            tensor,
            label: None,
            basis_names: None,
        }
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_tensor(StructureTensor::new(dim))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Self {
        self.basis_names = Some(names);
        self
    }

    pub fn dim(&self) -> usize {
        self.tensor.dim
    }

    pub fn tensor(&self) -> &StructureTensor {
        &self.tensor
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn basis_name(&self, i: usize) -> String {
        self.basis_names
            .as_ref()
            .and_then(|n| n.get(i).cloned())
            .unwrap_or_else(|| format!("X_{}", i + 1))
    }

    /// `[x, y]` by bilinear expansion through the structure constants.
    pub fn bracket<T: Scalar>(&self, x: &[T], y: &[T]) -> Result<Vec<T>> {
        let r = self.dim();
        for v in [x, y] {
            if v.len() != r {
                return Err(Error::LengthMismatch {
                    expected: r,
                    got: v.len(),
                });
            }
        }
        let mut out = vec![T::zero(); r];
        for (i, j, k, c) in self.tensor.entries() {
            let coeff = x[i].clone() * y[j].clone() - x[j].clone() * y[i].clone();
            if coeff.is_zero() {
                continue;
            }
            out[k] = out[k].clone() + coeff * T::from_rational(c);
        }
        Ok(out)
    }

    /// `[X_i, X_j]` as a coordinate vector (0-based indices).
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        (0..self.dim()).map(|k| self.tensor.get(i, j, k)).collect()
    }

    /// `C(j)` with `(C(j))_i^k = c_{ij}^k`: row `i` is `[X_i, X_j]`.
    pub fn ad_matrix(&self, j: usize) -> Result<QMatrix> {
        let r = self.dim();
        if j >= r {
            return Err(Error::IndexOutOfRange { index: j + 1, dim: r });
        }
        Ok(QMatrix::from_fn(r, r, |i, k| self.tensor.get(i, j, k)))
    }

    pub fn ad_matrices(&self) -> Vec<QMatrix> {
        (0..self.dim())
            .map(|j| self.ad_matrix(j).expect("index in range"))
            .collect()
    }

    /// Violations of `[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j] = 0`.
    pub fn check_jacobi(&self) -> Vec<JacobiViolation> {
        let r = self.dim();
        let e = |i| unit_vector(r, i);
        let br = |a: &[Rational], b: &[Rational]| self.bracket(a, b).expect("dims agree");
        let mut out = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                for k in j + 1..r {
                    let t1 = br(&self.bracket_basis(i, j), &e(k));
                    let t2 = br(&self.bracket_basis(j, k), &e(i));
                    let t3 = br(&self.bracket_basis(k, i), &e(j));
                    let residual: Vec<Rational> = (0..r)
                        .map(|n| t1[n].clone() + t2[n].clone() + t3[n].clone())
                        .collect();
                    if residual.iter().any(|x| !x.is_zero()) {
                        out.push(JacobiViolation {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        out
    }

    /// `[A, B]` for subspaces `A`, `B`.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for x in a.basis_vectors() {
            for y in b.basis_vectors() {
                vecs.push(self.bracket(&x, &y).expect("dims agree"));
            }
        }
        Subspace::span(self.dim(), &vecs)
    }

    pub fn derived_subalgebra(&self) -> Subspace {
        let r = self.dim();
        let vecs: Vec<Vec<Rational>> = (0..r)
            .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
            .map(|(i, j)| self.bracket_basis(i, j))
            .collect();
        Subspace::span(r, &vecs)
    }

    /// `L, L', L'', ...` up to and including the first repeated term.
    pub fn derived_series(&self) -> Vec<Subspace> {
        self.iterate_series(Subspace::full(self.dim()), |s| self.bracket_subspaces(s, s))
    }

    /// `L, [L,L], [L,[L,L]], ...` until stabilization.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        self.iterate_series(full.clone(), |s| self.bracket_subspaces(&full, s))
    }

    /// `0, Z(L), Z_2(L), ...` until stabilization.
    pub fn upper_central_series(&self) -> Vec<Subspace> {
        self.iterate_series(Subspace::zero(self.dim()), |s| self.centralizer_modulo(s))
    }

    fn iterate_series(&self, start: Subspace, step: impl Fn(&Subspace) -> Subspace) -> Vec<Subspace> {
        let mut series = vec![start];
        loop {
            let next = step(series.last().expect("nonempty"));
            if &next == series.last().expect("nonempty") {
                return series;
            }
            series.push(next);
        }
    }

    /// `{x : [x, L] ⊆ s}`.
    fn centralizer_modulo(&self, s: &Subspace) -> Subspace {
        let r = self.dim();
        let ann = s.annihilator();
        if ann.ncols() == 0 {
            return Subspace::full(r);
        }
        let mut stacked: Option<QMatrix> = None;
        for c in self.ad_matrices() {
            let block = &c * &ann;
            stacked = Some(match stacked {
                None => block,
                Some(m) => m.hstack(&block).expect("same rows"),
            });
        }
        let Some(m) = stacked else {
            return Subspace::full(r);
        };
        Subspace::span(r, &m.left_nullspace())
    }

    pub fn center(&self) -> Subspace {
        self.centralizer_modulo(&Subspace::zero(self.dim()))
    }

    /// `{x : [x, s] = 0 for all s in S}`.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        let r = self.dim();
        if s.is_zero() {
            return Subspace::full(r);
        }
        // x -> [x, s_b] is x * (sum_j s_b^j C(j))
        let ads = self.ad_matrices();
        let mut stacked: Option<QMatrix> = None;
        for v in s.basis_vectors() {
            let mut m = QMatrix::zeros(r, r);
            for (j, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    m = &m + &ads[j].scale(c);
                }
            }
            stacked = Some(match stacked {
                None => m,
                Some(acc) => acc.hstack(&m).expect("same rows"),
            });
        }
        Subspace::span(r, &stacked.expect("nonempty").left_nullspace())
    }

    /// `K_{ij} = tr(C(i) C(j))`.
    pub fn killing_form(&self) -> QMatrix {
        let ads = self.ad_matrices();
        let r = self.dim();
        QMatrix::from_fn(r, r, |i, j| (&ads[i] * &ads[j]).trace())
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_subspaces(s, s))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_subspaces(&Subspace::full(self.dim()), s))
    }

    /// The subalgebra `s` as an algebra in its echelon basis.
    pub fn restrict(&self, s: &Subspace) -> Result<LieAlgebra> {
        let basis = s.basis_vectors();
        let mut t = StructureTensor::new(basis.len());
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                let v = self.bracket(&basis[a], &basis[b])?;
                let coords = s.coordinates(&v).ok_or_else(|| {
                    Error::InvalidDecomposition("subspace is not closed under the bracket".into())
                })?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        t.add(a, b, k, c)?;
                    }
                }
            }
        }
        Ok(LieAlgebra::from_tensor(t))
    }

    /// Structure constants in the basis `Y_a = sum_l P_a^l X_l` (rows of `p`).
    pub fn change_basis(&self, p: &QMatrix) -> Result<LieAlgebra> {
        let r = self.dim();
        if p.shape() != (r, r) {
            return Err(Error::LengthMismatch {
                expected: r,
                got: p.nrows(),
            });
        }
        let pinv = p.inverse()?;
        let rows = p.row_vectors();
        let mut t = StructureTensor::new(r);
        for a in 0..r {
            for b in a + 1..r {
                let v = self.bracket(&rows[a], &rows[b])?;
                for (k, c) in pinv.left_apply(&v).into_iter().enumerate() {
                    if !c.is_zero() {
                        t.add(a, b, k, c)?;
                    }
                }
            }
        }
        let mut out = LieAlgebra::from_tensor(t);
        out.label = self.label.clone();
        Ok(out)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Subspace::is_zero)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(Subspace::is_zero)
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.label {
            write!(f, "{l}: ")?;
        }
        write!(f, "dim {}", self.dim())?;
        for (i, j, k, c) in self.tensor.entries() {
            let coeff = if c.is_one() { String::new() } else { format!("{c}*") };
            write!(
                f,
                ", [{},{}] ∋ {coeff}{}",
                self.basis_name(i),
                self.basis_name(j),
                self.basis_name(k)
            )?;
        }
        Ok(())
    }
}
