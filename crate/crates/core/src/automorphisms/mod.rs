//! Automorphism and derivation checks in coordinates.
//!
//! An automorphism `Φ(X_i) = b_i^l X_l` is stored as the matrix `B = (b_i^l)`
//! (row `i` is the image of `X_i`). The determining equations are
//! `c_{lm}^n b_i^l b_j^m = c_{ij}^k b_k^n` for `i < j`, plus `det B ≠ 0`.

mod descriptor;
mod notation;

use std::collections::{HashSet, VecDeque};

use num_traits::Zero;

pub use descriptor::{
    reconstruct, AutDescriptor, BlockEntry, BlockPattern, DiscreteGen, DiscreteKind,
    MatrixTemplate, OuterDer, ReconstructionChoice,
};
pub use notation::{is_signed_permutation, sign_mask, signed_permutation, weyl_combo, SignedBasis, WeylTerm};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, QMatrix};
use crate::scalar::{Rational, Scalar, Tolerance};
use crate::subspace::unit_vector;

/// Default bound on the size of a generated finite group.
pub const DEFAULT_CLOSURE_CAP: usize = 1024;

/// Outcome of checking the automorphism determining equations.
#[derive(Clone, Debug, PartialEq)]
pub struct AutReport<T> {
    pub holds: bool,
    /// Largest absolute residual over all equations (0 when exact and valid).
    pub worst_residual: f64,
    /// 1-based `(i, j, n)` of the equations that fail, in lexicographic order.
    pub violations: Vec<(usize, usize, usize)>,
    pub det: T,
    pub nonsingular: bool,
}

/// Checks that `B` maps `src` homomorphically onto `dst` and is invertible.
pub fn homomorphism_report<T: Scalar>(
    src: &LieAlgebra,
    dst: &LieAlgebra,
    b: &Matrix<T>,
    tol: Tolerance,
) -> Result<AutReport<T>> {
    let r = src.dim();
    if b.shape() != (r, dst.dim()) {
        return Err(Error::LengthMismatch {
            expected: r,
            got: b.nrows(),
        });
    }
    let rows = b.row_vectors();
    let mut worst = 0.0_f64;
    let mut violations = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let lhs = dst.bracket(&rows[i], &rows[j])?;
            let c: Vec<T> = src
                .bracket_basis(i, j)
                .iter()
                .map(T::from_rational)
                .collect();
            let rhs = b.left_apply(&c);
            for n in 0..dst.dim() {
                let res = lhs[n].clone() - rhs[n].clone();
                worst = worst.max(res.magnitude());
                if !res.is_negligible(tol) {
                    violations.push((i + 1, j + 1, n + 1));
                }
            }
        }
    }
    let det = if b.is_square() { b.det()? } else { T::zero() };
    let nonsingular = if T::EXACT {
        !det.is_zero()
    } else {
        det.magnitude() > tol.0
    };
    Ok(AutReport {
        holds: violations.is_empty() && nonsingular,
        worst_residual: worst,
        violations,
        det,
        nonsingular,
    })
}

pub fn automorphism_report<T: Scalar>(
    alg: &LieAlgebra,
    b: &Matrix<T>,
    tol: Tolerance,
) -> Result<AutReport<T>> {
    homomorphism_report(alg, alg, b, tol)
}

/// True iff `B` satisfies every determining equation and is nonsingular.
/// Exact scalars are checked exactly; floats use the default tolerance.
pub fn is_automorphism<T: Scalar>(alg: &LieAlgebra, b: &Matrix<T>) -> Result<bool> {
    Ok(automorphism_report(alg, b, Tolerance::default())?.holds)
}

/// Checks whether `B` is an isomorphism from `l1` onto `l2`.
pub fn is_isomorphism<T: Scalar>(b: &Matrix<T>, l1: &LieAlgebra, l2: &LieAlgebra) -> Result<bool> {
    if l1.dim() != l2.dim() {
        return Err(Error::LengthMismatch {
            expected: l1.dim(),
            got: l2.dim(),
        });
    }
    Ok(homomorphism_report(l1, l2, b, Tolerance::default())?.holds)
}

/// Residuals of the trace identity `c_{ln}^n b_j^l = c_{jn}^n` and of Killing
/// form preservation `B K Bᵀ = K`.
#[derive(Clone, Debug, PartialEq)]
pub struct NecessaryReport<T> {
    pub trace_residuals: Vec<T>,
    pub killing_residuals: Matrix<T>,
    /// 1-based `j` where the trace identity fails.
    pub trace_failures: Vec<usize>,
    /// 1-based `(i, j)` where the Killing identity fails.
    pub killing_failures: Vec<(usize, usize)>,
}

impl<T> NecessaryReport<T> {
    pub fn passes(&self) -> bool {
        self.trace_failures.is_empty() && self.killing_failures.is_empty()
    }
}

pub fn necessary_conditions<T: Scalar>(
    alg: &LieAlgebra,
    b: &Matrix<T>,
    tol: Tolerance,
) -> Result<NecessaryReport<T>> {
    let r = alg.dim();
    if b.shape() != (r, r) {
        return Err(Error::LengthMismatch {
            expected: r,
            got: b.nrows(),
        });
    }
    let t = alg.tensor();
    let traces: Vec<T> = (0..r)
        .map(|l| {
            (0..r).fold(Rational::zero(), |acc, n| acc + t.get(l, n, n))
        })
        .map(|q| T::from_rational(&q))
        .collect();
    let mut trace_residuals = Vec::with_capacity(r);
    let mut trace_failures = Vec::new();
    for j in 0..r {
        let lhs = (0..r).fold(T::zero(), |acc, l| acc + traces[l].clone() * b.get(j, l).clone());
        let res = lhs - traces[j].clone();
        if !res.is_negligible(tol) {
            trace_failures.push(j + 1);
        }
        trace_residuals.push(res);
    }
    let k: Matrix<T> = alg.killing_form().to_scalar();
    let bkbt = &(b * &k) * &b.transpose();
    let killing_residuals = &bkbt - &k;
    let mut killing_failures = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if !killing_residuals.get(i, j).is_negligible(tol) {
                killing_failures.push((i + 1, j + 1));
            }
        }
    }
    Ok(NecessaryReport {
        trace_residuals,
        killing_residuals,
        trace_failures,
        killing_failures,
    })
}

/// Leibniz-rule residual `D[X_i,X_j] - [D X_i, X_j] - [X_i, D X_j]` summed in
/// absolute value over all pairs.
fn derivation_defect<T: Scalar>(alg: &LieAlgebra, d: &Matrix<T>, tol: Tolerance) -> Result<bool> {
    let r = alg.dim();
    if d.shape() != (r, r) {
        return Err(Error::LengthMismatch {
            expected: r,
            got: d.nrows(),
        });
    }
    let rows = d.row_vectors();
    let basis: Vec<Vec<T>> = (0..r)
        .map(|i| unit_vector(r, i).iter().map(T::from_rational).collect())
        .collect();
    for i in 0..r {
        for j in i + 1..r {
            let c: Vec<T> = alg.bracket_basis(i, j).iter().map(T::from_rational).collect();
            let lhs = d.left_apply(&c);
            let a = alg.bracket(&rows[i], &basis[j])?;
            let b = alg.bracket(&basis[i], &rows[j])?;
            for n in 0..r {
                let res = lhs[n].clone() - a[n].clone() - b[n].clone();
                if !res.is_negligible(tol) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

pub fn is_derivation<T: Scalar>(alg: &LieAlgebra, d: &Matrix<T>) -> Result<bool> {
    Ok(!derivation_defect(alg, d, Tolerance::default())?)
}

/// Membership of `D` in `span{C(1), ..., C(R)}`, decided by exact rank.
pub fn is_inner_derivation(alg: &LieAlgebra, d: &QMatrix) -> Result<bool> {
    let r = alg.dim();
    if d.shape() != (r, r) {
        return Err(Error::LengthMismatch {
            expected: r,
            got: d.nrows(),
        });
    }
    let cols: Vec<Vec<Rational>> = alg
        .ad_matrices()
        .iter()
        .map(|c| c.entries().to_vec())
        .collect();
    let span = QMatrix::from_row_vectors(r * r, &cols)?;
    let with_d = span.vstack(&QMatrix::from_row_vectors(r * r, &[d.entries().to_vec()])?)?;
    Ok(span.rank() == with_d.rank())
}

/// Basis of the derivation algebra `Der(L)`, by exact nullspace.
pub fn derivation_algebra(alg: &LieAlgebra) -> Vec<QMatrix> {
    let r = alg.dim();
    let t = alg.tensor();
    let idx = |a: usize, b: usize| a * r + b;
    let mut rows = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            for n in 0..r {
                let mut eq = vec![Rational::zero(); r * r];
                for k in 0..r {
                    let c = t.get(i, j, k);
                    if !c.is_zero() {
                        eq[idx(k, n)] += c;
                    }
                }
                for l in 0..r {
                    let c = t.get(l, j, n);
                    if !c.is_zero() {
                        eq[idx(i, l)] -= c;
                    }
                    let c = t.get(i, l, n);
                    if !c.is_zero() {
                        eq[idx(j, l)] -= c;
                    }
                }
                if eq.iter().any(|x| !x.is_zero()) {
                    rows.push(eq);
                }
            }
        }
    }
    solution_matrices(r, &rows)
}

/// Nullspace of a system in the `r*r` entries of an unknown matrix.
pub(crate) fn solution_matrices(r: usize, equations: &[Vec<Rational>]) -> Vec<QMatrix> {
    let ns = if equations.is_empty() {
        (0..r * r).map(|i| unit_vector(r * r, i)).collect()
    } else {
        QMatrix::from_row_vectors(r * r, equations)
            .expect("equation width")
            .nullspace()
    };
    ns.into_iter()
        .map(|v| QMatrix::from_fn(r, r, |a, b| v[a * r + b].clone()))
        .collect()
}

/// `A_j(ε) = exp(ε C(j))` for a 0-based basis index `j`.
///
/// With an exact scalar this requires `C(j)` to be nilpotent unless `ε = 0`.
pub fn inner_one_param<T: Scalar>(alg: &LieAlgebra, j: usize, eps: &T) -> Result<Matrix<T>> {
    let c = alg.ad_matrix(j)?;
    if eps.is_zero() || c.is_zero_matrix() {
        return Ok(Matrix::identity(alg.dim()));
    }
    let m: Matrix<T> = c.to_scalar::<T>().scale(eps);
    Ok(T::matrix_exp(&m)?)
}

/// `exp(α D)` in the arithmetic of `T`.
pub fn exp_generator<T: Scalar>(d: &QMatrix, alpha: &T) -> Result<Matrix<T>> {
    if alpha.is_zero() || d.is_zero_matrix() {
        return Ok(Matrix::identity(d.nrows()));
    }
    Ok(T::matrix_exp(&d.to_scalar::<T>().scale(alpha))?)
}

/// All products of the generators, or [`Error::CapExceeded`] if the group
/// has more than `cap` elements.
pub fn group_closure(generators: &[QMatrix], cap: usize) -> Result<Vec<QMatrix>> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    let n = first.nrows();
    for g in generators {
        if g.shape() != (n, n) {
            return Err(Error::LengthMismatch {
                expected: n,
                got: g.nrows(),
            });
        }
    }
    let id = QMatrix::identity(n);
    let mut seen: HashSet<QMatrix> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in generators {
            let p = &m * g;
            if seen.insert(p.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                order.push(p.clone());
                queue.push_back(p);
            }
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn alg(dim: usize, br: &[(usize, usize, usize, i64)]) -> LieAlgebra {
        let b: Vec<_> = br.iter().map(|&(i, j, k, c)| (i, j, k, int(c))).collect();
        LieAlgebra::new(dim, &b).unwrap()
    }

    fn a48() -> LieAlgebra {
        alg(4, &[(2, 3, 1, 1), (2, 4, 2, 1), (3, 4, 3, -1)])
    }

    fn q(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn a48_discrete_generators() {
        let delta2 = q(&[&[-1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, -1]]);
        assert!(is_automorphism(&a48(), &delta2).unwrap());
        assert!(is_automorphism(&a48(), &QMatrix::identity(4)).unwrap());
        // p_1: [X2,X3] = X1 maps to [X2,X3] = X1 but Φ(X1) = -X1.
        let p1 = sign_mask(&[0], 4).unwrap();
        let rep = automorphism_report(&a48(), &p1, Tolerance::default()).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.violations, vec![(2, 3, 1)]);
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let rep = automorphism_report(&LieAlgebra::abelian(2), &QMatrix::zeros(2, 2), Tolerance::default())
            .unwrap();
        assert!(rep.violations.is_empty());
        assert!(!rep.holds);
    }

    #[test]
    fn necessary_conditions_on_a21() {
        let a21 = alg(2, &[(1, 2, 1, 1)]);
        let b = q(&[&[2, 0], &[5, 1]]);
        assert!(necessary_conditions(&a21, &b, Tolerance::default()).unwrap().passes());
        let bad = q(&[&[1, 0], &[0, 2]]);
        let rep = necessary_conditions(&a21, &bad, Tolerance::default()).unwrap();
        assert_eq!(rep.trace_failures, vec![2]);
    }

    #[test]
    fn derivations() {
        let d = &QMatrix::unit(4, 0, 0) + &QMatrix::unit(4, 2, 2);
        assert!(is_derivation(&a48(), &d).unwrap());
        assert!(!is_inner_derivation(&a48(), &d).unwrap());
        for c in a48().ad_matrices() {
            assert!(is_derivation(&a48(), &c).unwrap());
            assert!(is_inner_derivation(&a48(), &c).unwrap());
        }
        let a32 = alg(3, &[(1, 3, 1, 1), (2, 3, 1, 1), (2, 3, 2, 1)]);
        assert!(!is_derivation(&a32, &QMatrix::unit(3, 0, 0)).unwrap());
        let der = derivation_algebra(&a48());
        assert!(der.iter().all(|d| is_derivation(&a48(), d).unwrap()));
    }

    #[test]
    fn inner_subgroups_of_a48() {
        let a2 = inner_one_param(&a48(), 1, &int(3)).unwrap();
        let mut want = QMatrix::identity(4);
        want.set(2, 0, int(-3));
        want.set(3, 1, int(-3));
        assert_eq!(a2, want);
        assert_eq!(inner_one_param(&a48(), 0, &int(7)).unwrap(), QMatrix::identity(4));
        let a4 = inner_one_param(&a48(), 3, &1.0_f64).unwrap();
        let e = std::f64::consts::E;
        assert!(a4.max_abs_diff(&Matrix::from_diagonal(&[1.0, e, 1.0 / e, 1.0])) < 1e-12);
        assert!(inner_one_param(&a48(), 3, &int(1)).is_err());
    }

    #[test]
    fn closure_orders() {
        let delta1 = sign_mask(&[0, 1], 4).unwrap();
        let delta2 = q(&[&[-1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, -1]]);
        assert_eq!(group_closure(&[delta1, delta2], DEFAULT_CLOSURE_CAP).unwrap().len(), 8);
        assert_eq!(group_closure(&[QMatrix::identity(3)], 16).unwrap().len(), 1);
        assert_eq!(group_closure(&[sign_mask(&[0], 2).unwrap()], 16).unwrap().len(), 2);
        let shear = q(&[&[1, 1], &[0, 1]]);
        assert_eq!(group_closure(&[shear], 10), Err(Error::CapExceeded { cap: 10 }));
    }
}
