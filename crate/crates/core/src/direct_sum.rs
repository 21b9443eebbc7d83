//! Direct sums of algebras and automorphisms of the form `θ + ζ`, where `θ`
//! permutes isomorphic summands and `ζ` maps into the centre while killing
//! the derived algebra.

use crate::algebra::{LieAlgebra, StructureTensor};
use crate::automorphisms::{is_isomorphism, reconstruct, AutDescriptor, ReconstructionChoice};
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, QMatrix};
use crate::scalar::{Scalar, Tolerance};
use crate::subspace::Subspace;

/// A direct sum with component bases in consecutive blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct SumStructure {
    pub total: LieAlgebra,
    pub parts: Vec<LieAlgebra>,
    pub offsets: Vec<usize>,
}

impl SumStructure {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn block(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.parts[i].dim()
    }

    pub fn component(&self, i: usize) -> Subspace {
        let idx: Vec<usize> = self.block(i).collect();
        Subspace::coordinate(self.total.dim(), &idx)
    }

    pub fn decomposition(&self) -> Result<Decomposition> {
        let comps = (0..self.len()).map(|i| self.component(i)).collect();
        Decomposition::from_components(&self.total, comps)
    }
}

pub fn direct_sum(parts: &[LieAlgebra]) -> SumStructure {
    let dim = parts.iter().map(LieAlgebra::dim).sum();
    let mut tensor = StructureTensor::new(dim);
    let mut offsets = Vec::with_capacity(parts.len());
    let mut offset = 0;
    for p in parts {
        offsets.push(offset);
        for (i, j, k, c) in p.tensor().entries() {
            tensor
                .add(offset + i, offset + j, offset + k, c.clone())
                .expect("indices within block");
        }
        offset += p.dim();
    }
    let labels: Vec<&str> = parts.iter().filter_map(LieAlgebra::label).collect();
    let mut total = LieAlgebra::from_tensor(tensor);
    if labels.len() == parts.len() && !parts.is_empty() {
        total = total.with_label(labels.join(" + "));
    }
    SumStructure {
        total,
        parts: parts.to_vec(),
        offsets,
    }
}

/// Basis of `{ζ : ζ(L) ⊆ Z(L), ζ(L') = 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaSpace {
    pub basis: Vec<QMatrix>,
}

impl ZetaSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combination<T: Scalar>(&self, coeffs: &[T], r: usize) -> Result<Matrix<T>> {
        if coeffs.is_empty() {
            return Ok(Matrix::zeros(r, r));
        }
        if coeffs.len() != self.dim() {
            return Err(Error::ParameterCount(coeffs.len(), self.dim()));
        }
        Ok(self
            .basis
            .iter()
            .zip(coeffs)
            .fold(Matrix::zeros(r, r), |acc, (b, c)| &acc + &b.to_scalar::<T>().scale(c)))
    }
}

/// The basis consists of outer products `n zᵀ`, where `n` spans the
/// annihilator of `L'` and `z` spans the centre.
pub fn zeta_space(alg: &LieAlgebra) -> ZetaSpace {
    let r = alg.dim();
    let kill = alg.derived_subalgebra().annihilator();
    let centre = alg.center().basis_vectors();
    let mut basis = Vec::new();
    for a in 0..kill.ncols() {
        let n = kill.column(a);
        for z in &centre {
            basis.push(QMatrix::from_fn(r, r, |p, q| &n[p] * &z[q]));
        }
    }
    ZetaSpace { basis }
}

/// `ζ(L') = 0` and `ζ(L) ⊆ Z(L)`.
pub fn is_zeta_map(alg: &LieAlgebra, z: &QMatrix) -> bool {
    alg.derived_subalgebra().image(z).is_zero() && alg.center().contains_subspace(&Subspace::from_matrix(z))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SumAutDescriptor {
    pub sum: SumStructure,
    pub parts: Vec<AutDescriptor>,
    /// Partition of component indices into isomorphism classes.
    pub classes: Vec<Vec<usize>>,
    /// `identifications[k]` maps the first member of `k`'s class onto `M_k`.
    pub identifications: Vec<QMatrix>,
    pub zeta: ZetaSpace,
}

impl SumAutDescriptor {
    pub fn class_of(&self, k: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&k))
            .expect("every component has a class")
    }

    /// Isomorphism `M_a → M_b` between components of one class.
    pub fn identification(&self, a: usize, b: usize) -> Result<QMatrix> {
        if self.class_of(a) != self.class_of(b) {
            return Err(Error::InvalidPermutation(format!(
                "components {} and {} are not identified",
                a + 1,
                b + 1
            )));
        }
        Ok(&self.identifications[a].inverse()? * &self.identifications[b])
    }
}

/// Groups components with identical structure tensors, plus any extra
/// identifications `(a, b, J)` with `J` an isomorphism `M_a → M_b`.
pub fn sum_descriptor(
    sum: &SumStructure,
    parts_desc: &[AutDescriptor],
    extra: &[(usize, usize, QMatrix)],
) -> Result<SumAutDescriptor> {
    let r = sum.len();
    if parts_desc.len() != r {
        return Err(Error::LengthMismatch {
            expected: r,
            got: parts_desc.len(),
        });
    }
    for (p, d) in sum.parts.iter().zip(parts_desc) {
        if p.dim() != d.dim {
            return Err(Error::LengthMismatch {
                expected: p.dim(),
                got: d.dim,
            });
        }
    }
    // rep[k] = (representative, isomorphism rep -> k)
    let mut rep: Vec<(usize, QMatrix)> = (0..r)
        .map(|k| (k, QMatrix::identity(sum.parts[k].dim())))
        .collect();
    for k in 0..r {
        if let Some(a) = (0..k).find(|&a| rep[a].0 == a && sum.parts[a].tensor() == sum.parts[k].tensor()) {
            rep[k] = (a, QMatrix::identity(sum.parts[k].dim()));
        }
    }
    for (a, b, j) in extra {
        let (a, b) = (*a, *b);
        if a >= r || b >= r {
            return Err(Error::IndexOutOfRange {
                index: a.max(b) + 1,
                dim: r,
            });
        }
        if !is_isomorphism(j, &sum.parts[a], &sum.parts[b])? {
            return Err(Error::InvalidDescriptor(format!(
                "identification of components {} and {} is not an isomorphism",
                a + 1,
                b + 1
            )));
        }
        let (ra, ja) = rep[a].clone();
        let (rb, jb) = rep[b].clone();
        if ra == rb {
            continue;
        }
        // rb -> b -> a -> ra via jb, J^{-1}, ja^{-1}
        let to_ra = &(&jb * &j.inverse()?) * &ja.inverse()?;
        let inv = to_ra.inverse()?;
        for entry in rep.iter_mut().filter(|e| e.0 == rb) {
            *entry = (ra, &inv * &entry.1);
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for k in 0..r {
        match classes.iter_mut().find(|c| rep[c[0]].0 == rep[k].0) {
            Some(c) => c.push(k),
            None => classes.push(vec![k]),
        }
    }
    let identifications = rep.into_iter().map(|(_, j)| j).collect();
    Ok(SumAutDescriptor {
        sum: sum.clone(),
        parts: parts_desc.to_vec(),
        classes,
        identifications,
        zeta: zeta_space(&sum.total),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SumChoice<T> {
    pub components: Vec<ReconstructionChoice<T>>,
    /// Component `i` is mapped onto component `permutation[i]`.
    pub permutation: Vec<usize>,
    /// Coefficients in the ζ basis; empty means `ζ = 0`.
    pub zeta_coeffs: Vec<T>,
}

pub fn check_permutation(desc: &SumAutDescriptor, perm: &[usize]) -> Result<()> {
    let r = desc.sum.len();
    let mut seen = vec![false; r];
    if perm.len() != r {
        return Err(Error::InvalidPermutation(format!("{perm:?} has length {}, expected {r}", perm.len())));
    }
    for (i, &p) in perm.iter().enumerate() {
        if p >= r || seen[p] {
            return Err(Error::InvalidPermutation(format!("{perm:?} is not a bijection")));
        }
        seen[p] = true;
        if desc.class_of(i) != desc.class_of(p) {
            return Err(Error::InvalidPermutation(format!(
                "component {} is not isomorphic to component {}",
                i + 1,
                p + 1
            )));
        }
    }
    Ok(())
}

/// `B = θ + ζ`, rejected when singular.
pub fn synthesize<T: Scalar>(desc: &SumAutDescriptor, choice: &SumChoice<T>) -> Result<Matrix<T>> {
    let r = desc.sum.len();
    let n = desc.sum.total.dim();
    if choice.components.len() != r {
        return Err(Error::ParameterCount(choice.components.len(), r));
    }
    check_permutation(desc, &choice.permutation)?;
    let mut b = desc.zeta.combination(&choice.zeta_coeffs, n)?;
    for i in 0..r {
        let p = choice.permutation[i];
        let theta_i = reconstruct(&desc.sum.parts[i], &desc.parts[i], &choice.components[i])?;
        let block = &theta_i * &desc.identification(i, p)?.to_scalar();
        let (ri, cp) = (desc.sum.offsets[i], desc.sum.offsets[p]);
        for a in 0..block.nrows() {
            for c in 0..block.ncols() {
                let v = b.get(ri + a, cp + c).clone() + block.get(a, c).clone();
                b.set(ri + a, cp + c, v);
            }
        }
    }
    let det = b.det()?;
    if det.is_negligible(Tolerance::default()) {
        return Err(Error::SingularResult);
    }
    Ok(b)
}

/// Splitting of an automorphism as `θ + ζ` relative to a decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaZeta {
    /// Component `s` is carried onto component `permutation[s]`.
    pub permutation: Vec<usize>,
    pub theta: QMatrix,
    pub zeta: QMatrix,
    pub theta_is_automorphism: bool,
    pub zeta_is_central: bool,
}

impl ThetaZeta {
    pub fn holds(&self) -> bool {
        self.theta_is_automorphism && self.zeta_is_central
    }
}

/// Finds the component permutation of `B` and splits `B = θ + ζ` with
/// `θ = Σ π_s B π_{σ(s)}`.
pub fn theta_zeta_split(alg: &LieAlgebra, dec: &Decomposition, b: &QMatrix) -> Result<Option<ThetaZeta>> {
    let r = dec.len();
    let bijective = |s: usize, t: usize| {
        let m = &(&dec.projections[s] * b) * &dec.projections[t];
        dec.components[s].dim() == dec.components[t].dim()
            && dec.components[s].image(&m).dim() == dec.components[s].dim()
    };
    let options: Vec<Vec<usize>> = (0..r).map(|s| (0..r).filter(|&t| bijective(s, t)).collect()).collect();
    let mut perm = Vec::new();
    let mut used = vec![false; r];
    let mut found = None;
    assign(alg, dec, b, &options, &mut perm, &mut used, &mut found)?;
    Ok(found)
}

fn split_with(alg: &LieAlgebra, dec: &Decomposition, b: &QMatrix, perm: &[usize]) -> Result<ThetaZeta> {
    let n = alg.dim();
    let mut theta = QMatrix::zeros(n, n);
    for (s, &t) in perm.iter().enumerate() {
        theta = &theta + &(&(&dec.projections[s] * b) * &dec.projections[t]);
    }
    let zeta = b - &theta;
    Ok(ThetaZeta {
        permutation: perm.to_vec(),
        theta_is_automorphism: crate::automorphisms::is_automorphism(alg, &theta)?,
        zeta_is_central: is_zeta_map(alg, &zeta),
        theta,
        zeta,
    })
}

fn assign(
    alg: &LieAlgebra,
    dec: &Decomposition,
    b: &QMatrix,
    options: &[Vec<usize>],
    perm: &mut Vec<usize>,
    used: &mut [bool],
    found: &mut Option<ThetaZeta>,
) -> Result<()> {
    if found.as_ref().is_some_and(ThetaZeta::holds) {
        return Ok(());
    }
    let s = perm.len();
    if s == options.len() {
        let tz = split_with(alg, dec, b, perm)?;
        if found.is_none() || tz.holds() {
            *found = Some(tz);
        }
        return Ok(());
    }
    for &t in &options[s] {
        if !used[t] {
            used[t] = true;
            perm.push(t);
            assign(alg, dec, b, options, perm, used, found)?;
            perm.pop();
            used[t] = false;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::{is_automorphism, signed_permutation, SignedBasis};
    use crate::scalar::{int, Rational};

    fn alg(dim: usize, br: &[(usize, usize, usize, i64)]) -> LieAlgebra {
        let b: Vec<_> = br.iter().map(|&(i, j, k, c)| (i, j, k, int(c))).collect();
        LieAlgebra::new(dim, &b).unwrap()
    }

    fn a21() -> LieAlgebra {
        alg(2, &[(1, 2, 1, 1)])
    }

    fn a31() -> LieAlgebra {
        alg(3, &[(2, 3, 1, 1)])
    }

    fn a39() -> LieAlgebra {
        alg(3, &[(1, 2, 3, 1), (2, 3, 1, 1), (1, 3, 2, -1)])
    }

    #[test]
    fn example_sum_brackets() {
        let s = direct_sum(&[a21(), a31(), a31()]);
        let want = alg(8, &[(1, 2, 1, 1), (4, 5, 3, 1), (7, 8, 6, 1)]);
        assert_eq!(s.total.tensor(), want.tensor());
        assert_eq!(s.offsets, vec![0, 2, 5]);
        let ab = direct_sum(&[LieAlgebra::abelian(2), LieAlgebra::abelian(3)]);
        assert!(ab.total.tensor().is_abelian());
        assert_eq!(ab.total.dim(), 5);
    }

    #[test]
    fn zeta_dimensions() {
        let s = direct_sum(&[a21(), a31(), a31()]);
        let z = zeta_space(&s.total);
        assert_eq!(z.dim(), 10);
        assert!(z.basis.contains(&QMatrix::unit(8, 1, 2)));
        assert!(z.basis.contains(&QMatrix::unit(8, 7, 2)));
        assert!(z.basis.iter().all(|m| is_zeta_map(&s.total, m)));
        let a38 = alg(3, &[(1, 2, 1, 1), (2, 3, 3, 1), (1, 3, 2, -2)]);
        assert_eq!(zeta_space(&a38).dim(), 0);
        let a48 = alg(4, &[(2, 3, 1, 1), (2, 4, 2, 1), (3, 4, 3, -1)]);
        let z = zeta_space(&a48);
        assert_eq!(z.dim(), 1);
        assert_eq!(z.basis[0], QMatrix::unit(4, 3, 0));
    }

    #[test]
    fn identical_summands_swap() {
        let s = direct_sum(&[a39(), a39()]);
        let d = sum_descriptor(&s, &[AutDescriptor::trivial(3), AutDescriptor::trivial(3)], &[]).unwrap();
        assert_eq!(d.classes, vec![vec![0, 1]]);
        let choice = SumChoice::<Rational> {
            components: vec![Default::default(), Default::default()],
            permutation: vec![1, 0],
            zeta_coeffs: vec![],
        };
        let b = synthesize(&d, &choice).unwrap();
        assert!(is_automorphism(&s.total, &b).unwrap());
        assert_eq!(b.get(0, 3), &int(1));
    }

    #[test]
    fn supplied_identification() {
        let a34 = alg(3, &[(1, 3, 1, 1), (2, 3, 2, -1)]);
        let swapped = a34.change_basis(&signed_permutation(&[SignedBasis::pos(1), SignedBasis::pos(0), SignedBasis::pos(2)]).unwrap()).unwrap();
        let s = direct_sum(&[a34.clone(), swapped.clone()]);
        let descs = [AutDescriptor::trivial(3), AutDescriptor::trivial(3)];
        assert_eq!(sum_descriptor(&s, &descs, &[]).unwrap().classes.len(), 2);
        let j = signed_permutation(&[SignedBasis::pos(1), SignedBasis::pos(0), SignedBasis::pos(2)]).unwrap();
        assert!(is_isomorphism(&j, &a34, &swapped).unwrap());
        let d = sum_descriptor(&s, &descs, &[(0, 1, j)]).unwrap();
        assert_eq!(d.classes, vec![vec![0, 1]]);
        let choice = SumChoice::<Rational> {
            components: vec![Default::default(), Default::default()],
            permutation: vec![1, 0],
            zeta_coeffs: vec![],
        };
        let b = synthesize(&d, &choice).unwrap();
        assert!(is_automorphism(&s.total, &b).unwrap());
        let bad = SumChoice::<Rational> {
            permutation: vec![0, 0],
            ..choice
        };
        assert!(matches!(synthesize(&d, &bad), Err(Error::InvalidPermutation(_))));
    }

    #[test]
    fn singular_zeta_is_rejected() {
        let s = direct_sum(&[LieAlgebra::abelian(1)]);
        let d = sum_descriptor(&s, &[AutDescriptor::trivial(1)], &[]).unwrap();
        let choice = SumChoice {
            components: vec![Default::default()],
            permutation: vec![0],
            zeta_coeffs: vec![int(-1)],
        };
        assert_eq!(synthesize(&d, &choice), Err(Error::SingularResult));
    }

    #[test]
    fn split_recovers_permutation() {
        let s = direct_sum(&[a21(), a31(), a31()]);
        let d = sum_descriptor(&s, &[AutDescriptor::trivial(2), AutDescriptor::trivial(3), AutDescriptor::trivial(3)], &[]).unwrap();
        let choice = SumChoice::<Rational> {
            components: vec![Default::default(); 3],
            permutation: vec![0, 2, 1],
            zeta_coeffs: (1..=10).map(int).collect(),
        };
        let b = synthesize(&d, &choice).unwrap();
        let dec = s.decomposition().unwrap();
        let tz = theta_zeta_split(&s.total, &dec, &b).unwrap().unwrap();
        assert!(tz.holds());
        assert_eq!(tz.permutation, vec![0, 2, 1]);
    }
}
