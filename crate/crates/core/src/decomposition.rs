//! Direct-sum decomposition into indecomposable ideals, via Fitting
//! splittings of normal endomorphisms, and the Krull-Schmidt comparison of
//! two decompositions.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::LieAlgebra;
use crate::automorphisms::solution_matrices;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::scalar::{int, Rational};
use crate::subspace::Subspace;

pub const DEFAULT_SWEEP_BUDGET: usize = 64;

/// Basis of `{φ : φ[X,Y] = [φX,Y] = [X,φY]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalEndoSpace {
    pub basis: Vec<QMatrix>,
}

impl NormalEndoSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, m: &QMatrix) -> bool {
        let n = m.nrows();
        let rows: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
        if rows.is_empty() {
            return m.is_zero_matrix();
        }
        let span = Subspace::span(n * n, &rows);
        span.contains(m.entries())
    }
}

/// Linear conditions `c_{ij}^k m_k^n - m_i^l c_{lj}^n = 0` over all ordered
/// pairs `(i, j)`, on the unknown entries `m_a^b` at position `a*R + b`.
fn normal_equations(alg: &LieAlgebra) -> Vec<Vec<Rational>> {
    let r = alg.dim();
    let t = alg.tensor();
    let mut rows = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for n in 0..r {
                let mut eq = vec![Rational::zero(); r * r];
                for k in 0..r {
                    let c = t.get(i, j, k);
                    if !c.is_zero() {
                        eq[k * r + n] += c;
                    }
                }
                for l in 0..r {
                    let c = t.get(l, j, n);
                    if !c.is_zero() {
                        eq[i * r + l] -= c;
                    }
                }
                if eq.iter().any(|x| !x.is_zero()) {
                    rows.push(eq);
                }
            }
        }
    }
    rows
}

pub fn normal_endomorphisms(alg: &LieAlgebra) -> NormalEndoSpace {
    NormalEndoSpace {
        basis: solution_matrices(alg.dim(), &normal_equations(alg)),
    }
}

pub fn is_normal_endomorphism(alg: &LieAlgebra, phi: &QMatrix) -> bool {
    let r = alg.dim();
    phi.shape() == (r, r)
        && normal_equations(alg).iter().all(|eq| {
            eq.iter()
                .zip(phi.entries())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                .is_zero()
        })
}

/// Kernel and image of `φ^k` once they have stabilized.
#[derive(Clone, Debug, PartialEq)]
pub struct Fitting {
    pub kernel: Subspace,
    pub image: Subspace,
    pub exponent: usize,
}

fn stable_power(phi: &QMatrix) -> Result<Fitting> {
    let r = phi.nrows();
    let mut k = 1;
    let mut pk = phi.clone();
    loop {
        let p2k = &pk * &pk;
        if pk.rank() == p2k.rank() || k >= r.max(1) {
            let kernel = Subspace::span(r, &pk.left_nullspace());
            let image = Subspace::from_matrix(&pk);
            return Ok(Fitting {
                kernel,
                image,
                exponent: k,
            });
        }
        pk = p2k;
        k *= 2;
    }
}

/// `L = Ker(φ^k) ⊕ Im(φ^k)` when both parts are proper, `None` when `φ` is
/// nilpotent or bijective.
pub fn fitting_split(alg: &LieAlgebra, phi: &QMatrix) -> Result<Option<(Subspace, Subspace)>> {
    if !is_normal_endomorphism(alg, phi) {
        return Err(Error::NotNormal);
    }
    let f = stable_power(phi)?;
    if f.kernel.is_zero() || f.image.is_zero() {
        return Ok(None);
    }
    Ok(Some((f.kernel, f.image)))
}

/// A direct-sum decomposition `L = M_1 ⊕ ... ⊕ M_r` into ideals.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub components: Vec<Subspace>,
    pub projections: Vec<QMatrix>,
    pub central: Vec<bool>,
    /// How `decompose` arrived at the components; empty for
    /// [`Decomposition::from_components`].
    pub transcript: Vec<String>,
}

impl Decomposition {
    /// Validates that the ideals form a direct sum equal to `L` and computes
    /// the projections.
    pub fn from_components(alg: &LieAlgebra, components: Vec<Subspace>) -> Result<Self> {
        let r = alg.dim();
        let mut total = Subspace::zero(r);
        let mut dims = 0;
        for (n, m) in components.iter().enumerate() {
            if m.ambient_dim() != r {
                return Err(Error::LengthMismatch {
                    expected: r,
                    got: m.ambient_dim(),
                });
            }
            if m.is_zero() {
                return Err(Error::InvalidDecomposition(format!("component {} is zero", n + 1)));
            }
            if !alg.is_ideal(m) {
                return Err(Error::InvalidDecomposition(format!(
                    "component {} = {m} is not an ideal",
                    n + 1
                )));
            }
            total = total.sum(m);
            dims += m.dim();
        }
        if dims != r || !total.is_full() {
            return Err(Error::InvalidDecomposition(format!(
                "components have total dimension {dims} and span a space of dimension {}",
                total.dim()
            )));
        }
        let stacked: Vec<Vec<Rational>> = components.iter().flat_map(|m| m.basis_vectors()).collect();
        let p = QMatrix::from_row_vectors(r, &stacked)?;
        let p_inv = p.inverse()?;
        let mut projections = Vec::with_capacity(components.len());
        let mut offset = 0;
        for m in &components {
            let mut e = QMatrix::zeros(r, r);
            for i in offset..offset + m.dim() {
                e.set(i, i, int(1));
            }
            projections.push(&(&p_inv * &e) * &p);
            offset += m.dim();
        }
        let z = alg.center();
        let central = components.iter().map(|m| z.contains_subspace(m)).collect();
        Ok(Decomposition {
            components,
            projections,
            central,
            transcript: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(Subspace::dim).collect()
    }

    /// `π_i² = π_i`, `π_iπ_j = 0` and `Σπ_i = ι`, exactly.
    pub fn projections_consistent(&self) -> bool {
        let Some(first) = self.projections.first() else {
            return true;
        };
        let r = first.nrows();
        let mut sum = QMatrix::zeros(r, r);
        for (i, p) in self.projections.iter().enumerate() {
            for (j, q) in self.projections.iter().enumerate() {
                let pq = p * q;
                let ok = if i == j { pq == *p } else { pq.is_zero_matrix() };
                if !ok {
                    return false;
                }
            }
            sum = &sum + p;
        }
        sum == QMatrix::identity(r)
    }
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let v = rng.gen_range(1..=3);
    int(if rng.gen_bool(0.5) { v } else { -v })
}

/// Finds a proper Fitting splitting of `alg`, trying each candidate and its
/// shifts by rational eigenvalues.
/// Two complementary ideals and a note on how they were found.
type Split = (Subspace, Subspace, String);

fn find_split(
    alg: &LieAlgebra,
    rng: &mut ChaCha8Rng,
    budget: usize,
) -> Result<(Option<Split>, usize)> {
    let r = alg.dim();
    let ne = normal_endomorphisms(alg).basis;
    let mut tried = 0usize;
    let mut attempt = |phi: &QMatrix, label: String| -> Result<Option<(Subspace, Subspace, String)>> {
        tried += 1;
        for lambda in phi.rational_eigenvalues()? {
            let shifted = phi - &QMatrix::identity(r).scale(&lambda);
            let f = stable_power(&shifted)?;
            if !f.kernel.is_zero() && !f.image.is_zero() {
                return Ok(Some((f.kernel, f.image, format!("{label} shifted by {lambda}"))));
            }
        }
        Ok(None)
    };
    for (n, b) in ne.iter().enumerate() {
        if let Some(s) = attempt(b, format!("basis element {}", n + 1))? {
            return Ok((Some(s), tried));
        }
    }
    for a in 0..ne.len() {
        for b in a + 1..ne.len() {
            if let Some(s) = attempt(&(&ne[a] + &ne[b]), format!("sum of basis elements {} and {}", a + 1, b + 1))? {
                return Ok((Some(s), tried));
            }
        }
    }
    if ne.len() > 1 {
        for n in 0..budget {
            let mut phi = QMatrix::zeros(r, r);
            for b in &ne {
                phi = &phi + &b.scale(&random_nonzero(rng));
            }
            if let Some(s) = attempt(&phi, format!("random combination {}", n + 1))? {
                return Ok((Some(s), tried));
            }
        }
    }
    Ok((None, tried))
}

/// Lifts a subspace given in echelon coordinates of `host` back to `L`.
fn lift(sub: &Subspace, host: &Subspace) -> Subspace {
    let vecs: Vec<Vec<Rational>> = sub
        .basis_vectors()
        .iter()
        .map(|c| host.basis().left_apply(c))
        .collect();
    Subspace::span(host.ambient_dim(), &vecs)
}

fn split_recursive(
    alg: &LieAlgebra,
    host: &Subspace,
    rng: &mut ChaCha8Rng,
    budget: usize,
    transcript: &mut Vec<String>,
    out: &mut Vec<Subspace>,
) -> Result<()> {
    let local = alg.restrict(host)?;
    let (found, tried) = find_split(&local, rng, budget)?;
    match found {
        Some((ker, im, how)) => {
            let (ker, im) = (lift(&ker, host), lift(&im, host));
            transcript.push(format!(
                "{host}: split by {how} into dimensions {} + {}",
                ker.dim(),
                im.dim()
            ));
            for part in [ker, im] {
                split_recursive(alg, &part, rng, budget, transcript, out)?;
            }
        }
        None => {
            transcript.push(format!(
                "{host}: no splitting among {tried} candidates, declared indecomposable"
            ));
            out.push(host.clone());
        }
    }
    Ok(())
}

/// Splits `L` into ideals that no candidate normal endomorphism splits
/// further. Deterministic for a given seed.
pub fn decompose(alg: &LieAlgebra, seed: u64, sweep_budget: usize) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut transcript = Vec::new();
    let mut parts = Vec::new();
    if alg.dim() > 0 {
        let full = Subspace::full(alg.dim());
        split_recursive(alg, &full, &mut rng, sweep_budget, &mut transcript, &mut parts)?;
    }
    parts.sort_by_key(|m| m.pivots()[0]);
    let mut d = Decomposition::from_components(alg, parts)?;
    d.transcript = transcript;
    Ok(d)
}

/// Checks of the pairing conditions for one matched pair `(M_i, N_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub projection_onto: bool,
    pub image_onto: bool,
    pub derived_equal: bool,
    pub within_central_extension: bool,
}

impl PairCheck {
    pub fn holds(&self) -> bool {
        self.projection_onto && self.image_onto && self.derived_equal && self.within_central_extension
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KrullSchmidtReport {
    /// `pairing[i] = j` pairs `M_i` with `N_j` (0-based).
    pub pairing: Vec<usize>,
    pub pairs: Vec<PairCheck>,
    /// Whether `M_1..M_k ⊕ N_{k+1}..N_r` is a decomposition, for `k = 1..r-1`.
    pub exchanges: Vec<bool>,
    /// `Z(L) = 0` or `L' = L`.
    pub uniqueness_expected: bool,
    /// `M_i = N_{pairing[i]}` for every `i`.
    pub identical: bool,
}

impl KrullSchmidtReport {
    pub fn holds(&self) -> bool {
        self.pairs.iter().all(PairCheck::holds)
            && self.exchanges.iter().all(|&e| e)
            && (!self.uniqueness_expected || self.identical)
    }
}

fn pair_check(alg: &LieAlgebra, m: &Decomposition, n: &Decomposition, i: usize, j: usize) -> PairCheck {
    let r = alg.dim();
    let mi = &m.components[i];
    let nj = &n.components[j];
    let others = m
        .components
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .fold(Subspace::zero(r), |acc, (_, c)| acc.sum(c));
    let z_bar = others.intersection(&alg.center());
    PairCheck {
        i,
        j,
        projection_onto: nj.image(&m.projections[i]) == *mi,
        image_onto: mi.image(&n.projections[j]) == *nj,
        derived_equal: alg.bracket_subspaces(nj, nj) == alg.bracket_subspaces(mi, mi),
        within_central_extension: mi.sum(&z_bar).contains_subspace(nj),
    }
}

fn exchange_checks(alg: &LieAlgebra, m: &Decomposition, n: &Decomposition, pairing: &[usize]) -> Vec<bool> {
    let r = m.len();
    (1..r)
        .map(|k| {
            let comps: Vec<Subspace> = (0..r)
                .map(|i| {
                    if i < k {
                        m.components[i].clone()
                    } else {
                        n.components[pairing[i]].clone()
                    }
                })
                .collect();
            Decomposition::from_components(alg, comps).is_ok()
        })
        .collect()
}

/// Pairs the components of two decompositions of `L` as in the Krull-Schmidt
/// theorem. `π_iψ_j` must be bijective on `M_i` for every matched pair.
pub fn krull_schmidt_match(alg: &LieAlgebra, m: &Decomposition, n: &Decomposition) -> Result<KrullSchmidtReport> {
    let r = m.len();
    if n.len() != r {
        return Err(Error::InvalidDecomposition(format!(
            "decompositions have {} and {} components",
            r,
            n.len()
        )));
    }
    let admissible: Vec<Vec<usize>> = (0..r)
        .map(|i| {
            (0..r)
                .filter(|&j| {
                    let composite = &n.projections[j] * &m.projections[i];
                    m.components[i].image(&composite).dim() == m.components[i].dim()
                })
                .collect()
        })
        .collect();
    if let Some(i) = admissible.iter().position(Vec::is_empty) {
        return Err(Error::NoPairing(i + 1));
    }

    let mut best: Option<KrullSchmidtReport> = None;
    let mut pairing = Vec::with_capacity(r);
    let mut used = vec![false; r];
    search(alg, m, n, &admissible, &mut pairing, &mut used, &mut best);
    let report = best.ok_or(Error::NoPairing(1))?;
    Ok(report)
}

fn search(
    alg: &LieAlgebra,
    m: &Decomposition,
    n: &Decomposition,
    admissible: &[Vec<usize>],
    pairing: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<KrullSchmidtReport>,
) {
    if best.as_ref().is_some_and(KrullSchmidtReport::holds) {
        return;
    }
    let i = pairing.len();
    if i == admissible.len() {
        let pairs: Vec<PairCheck> = pairing
            .iter()
            .enumerate()
            .map(|(i, &j)| pair_check(alg, m, n, i, j))
            .collect();
        let exchanges = exchange_checks(alg, m, n, pairing);
        let z = alg.center();
        let uniqueness_expected = z.is_zero() || alg.derived_subalgebra().is_full();
        let identical = pairing
            .iter()
            .enumerate()
            .all(|(i, &j)| m.components[i] == n.components[j]);
        let report = KrullSchmidtReport {
            pairing: pairing.clone(),
            pairs,
            exchanges,
            uniqueness_expected,
            identical,
        };
        if best.is_none() || report.holds() {
            *best = Some(report);
        }
        return;
    }
    for &j in &admissible[i] {
        if used[j] {
            continue;
        }
        used[j] = true;
        pairing.push(j);
        search(alg, m, n, admissible, pairing, used, best);
        pairing.pop();
        used[j] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn alg(dim: usize, br: &[(usize, usize, usize, i64)]) -> LieAlgebra {
        let b: Vec<_> = br.iter().map(|&(i, j, k, c)| (i, j, k, int(c))).collect();
        LieAlgebra::new(dim, &b).unwrap()
    }

    fn example8() -> LieAlgebra {
        alg(8, &[(1, 2, 1, 1), (4, 5, 3, 1), (7, 8, 6, 1)])
    }

    #[test]
    fn normal_endomorphism_spaces() {
        let a38 = alg(3, &[(1, 2, 1, 1), (2, 3, 3, 1), (1, 3, 2, -2)]);
        let ne = normal_endomorphisms(&a38);
        assert_eq!(ne.dim(), 1);
        assert!(ne.contains(&QMatrix::identity(3)));
        assert_eq!(normal_endomorphisms(&LieAlgebra::abelian(3)).dim(), 9);
        let ne8 = normal_endomorphisms(&example8());
        assert!(ne8.dim() >= 3);
        let blocks = [vec![0, 1], vec![2, 3, 4], vec![5, 6, 7]];
        for b in &blocks {
            let pi = QMatrix::from_fn(8, 8, |i, j| if i == j && b.contains(&i) { int(1) } else { int(0) });
            assert!(ne8.contains(&pi));
        }
    }

    #[test]
    fn fitting_of_block_projection() {
        let l = example8();
        let pi1 = QMatrix::from_fn(8, 8, |i, j| if i == j && i < 2 { int(1) } else { int(0) });
        let (ker, im) = fitting_split(&l, &pi1).unwrap().unwrap();
        assert_eq!(ker, Subspace::coordinate(8, &[2, 3, 4, 5, 6, 7]));
        assert_eq!(im, Subspace::coordinate(8, &[0, 1]));
        assert_eq!(fitting_split(&l, &QMatrix::identity(8)).unwrap(), None);
        assert_eq!(fitting_split(&l, &QMatrix::unit(8, 0, 1)), Err(Error::NotNormal));
    }

    #[test]
    fn nilpotent_normal_endo_does_not_split() {
        let a31 = alg(3, &[(2, 3, 1, 1)]);
        let phi = QMatrix::unit(3, 1, 0);
        assert!(is_normal_endomorphism(&a31, &phi));
        assert_eq!(fitting_split(&a31, &phi).unwrap(), None);
    }

    #[test]
    fn decompose_example() {
        let l = example8();
        for seed in 0..5 {
            let d = decompose(&l, seed, DEFAULT_SWEEP_BUDGET).unwrap();
            let mut dims = d.dims();
            dims.sort();
            assert_eq!(dims, vec![2, 3, 3]);
            assert!(d.projections_consistent());
            assert!(d.central.iter().all(|c| !c));
        }
        let a38 = alg(3, &[(1, 2, 1, 1), (2, 3, 3, 1), (1, 3, 2, -2)]);
        assert_eq!(decompose(&a38, 0, DEFAULT_SWEEP_BUDGET).unwrap().len(), 1);
    }

    #[test]
    fn decompose_shuffled_sum() {
        // A_{2,1} ⊕ A_{2,1} in a scrambled basis
        let sum = alg(4, &[(1, 2, 1, 1), (3, 4, 3, 1)]);
        let p = QMatrix::from_rows(vec![
            vec![int(1), int(2), int(0), int(1)],
            vec![int(0), int(1), int(-1), int(0)],
            vec![frac(1, 2), int(0), int(1), int(1)],
            vec![int(0), int(0), int(3), int(1)],
        ])
        .unwrap();
        let scrambled = sum.change_basis(&p).unwrap();
        let d = decompose(&scrambled, 7, DEFAULT_SWEEP_BUDGET).unwrap();
        assert_eq!(d.dims(), vec![2, 2]);
        assert!(d.projections_consistent());
    }

    #[test]
    fn abelian_splits_into_lines() {
        let d = decompose(&LieAlgebra::abelian(3), 1, DEFAULT_SWEEP_BUDGET).unwrap();
        assert_eq!(d.dims(), vec![1, 1, 1]);
        assert!(d.central.iter().all(|&c| c));
    }

    #[test]
    fn central_shift_matching() {
        let l = alg(4, &[(2, 3, 1, 1)]);
        let m = Decomposition::from_components(
            &l,
            vec![Subspace::coordinate(4, &[0, 1, 2]), Subspace::coordinate(4, &[3])],
        )
        .unwrap();
        let shifted = Subspace::span(
            4,
            &[
                vec![int(1), int(0), int(0), int(0)],
                vec![int(0), int(1), int(0), int(1)],
                vec![int(0), int(0), int(1), int(0)],
            ],
        );
        let n = Decomposition::from_components(&l, vec![shifted, Subspace::coordinate(4, &[3])]).unwrap();
        let rep = krull_schmidt_match(&l, &m, &n).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.pairing, vec![0, 1]);
        assert!(!rep.identical);
        assert!(!rep.uniqueness_expected);

        let same = krull_schmidt_match(&l, &m, &m).unwrap();
        assert!(same.holds() && same.identical);
    }

    #[test]
    fn non_ideal_is_rejected() {
        let l = alg(3, &[(2, 3, 1, 1)]);
        let bad = Decomposition::from_components(
            &l,
            vec![Subspace::coordinate(3, &[0, 1]), Subspace::coordinate(3, &[2])],
        );
        assert!(matches!(bad, Err(Error::InvalidDecomposition(_))));
    }
}
