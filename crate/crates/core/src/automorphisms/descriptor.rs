//! Generating data for an automorphism group, and reconstruction of
//! individual automorphisms from it:
//!
//! `B = (∏ A_j(ε_j)) · Δ · (∏ exp(α_i D_i)) · Block · Family`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use super::notation::{index_label, sign_mask, signed_permutation, weyl_combo, SignedBasis, WeylTerm};
use super::{exp_generator, inner_one_param};
use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::expr::{Env, Expr};
use crate::matrix::{Matrix, QMatrix};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq, Debug)]
pub enum DiscreteKind {
    /// 0-based positions of the `-1` entries.
    SignMask(Vec<usize>),
    SignedPermutation(Vec<SignedBasis>),
    Explicit(QMatrix),
}

#[derive(Clone, PartialEq, Debug)]
pub struct DiscreteGen {
    pub kind: DiscreteKind,
    pub weyl_reflection: bool,
    pub name: Option<String>,
}

impl DiscreteGen {
    pub fn sign_mask(m: Vec<usize>) -> Self {
        DiscreteGen {
            kind: DiscreteKind::SignMask(m),
            weyl_reflection: false,
            name: None,
        }
    }

    pub fn tuple(t: Vec<SignedBasis>) -> Self {
        DiscreteGen {
            kind: DiscreteKind::SignedPermutation(t),
            weyl_reflection: false,
            name: None,
        }
    }

    pub fn explicit(name: impl Into<String>, m: QMatrix) -> Self {
        DiscreteGen {
            kind: DiscreteKind::Explicit(m),
            weyl_reflection: false,
            name: Some(name.into()),
        }
    }

    pub fn matrix(&self, dim: usize) -> Result<QMatrix> {
        let m = match &self.kind {
            DiscreteKind::SignMask(m) => sign_mask(m, dim)?,
            DiscreteKind::SignedPermutation(t) => signed_permutation(t)?,
            DiscreteKind::Explicit(m) => m.clone(),
        };
        if m.shape() != (dim, dim) {
            return Err(Error::LengthMismatch {
                expected: dim,
                got: m.nrows(),
            });
        }
        Ok(m)
    }
}

impl fmt::Display for DiscreteGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DiscreteKind::SignMask(m) => {
                write!(f, "p")?;
                if m.iter().all(|&i| i < 9) {
                    m.iter().try_for_each(|i| write!(f, "{}", i + 1))
                } else {
                    let s: Vec<String> = m.iter().map(|i| (i + 1).to_string()).collect();
                    write!(f, "{{{}}}", s.join(","))
                }
            }
            DiscreteKind::SignedPermutation(t) => {
                let s: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                if self.weyl_reflection {
                    write!(f, "(({}))", s.join(","))
                } else {
                    write!(f, "({})", s.join(","))
                }
            }
            DiscreteKind::Explicit(_) => write!(f, "{}", self.name.as_deref().unwrap_or("matrix")),
        }
    }
}

/// Generator of a one-parameter group of outer automorphisms.
#[derive(Clone, PartialEq, Debug)]
pub struct OuterDer {
    pub terms: Vec<WeylTerm>,
    /// Symbol `u` of a `[·]_u` range restriction. Metadata only.
    pub range_param: Option<String>,
}

impl OuterDer {
    pub fn matrix(&self, dim: usize) -> Result<QMatrix> {
        weyl_combo(&self.terms, dim)
    }
}

impl fmt::Display for OuterDer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut body = String::new();
        for (n, t) in self.terms.iter().enumerate() {
            let s = t.to_string();
            if n > 0 && !s.starts_with('-') {
                body.push('+');
            }
            body.push_str(&s);
        }
        match &self.range_param {
            Some(u) => write!(f, "[{body}]_{u}"),
            None => write!(f, "{body}"),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum BlockEntry {
    Scalar(Expr),
    /// `coeff · S_m`; the multi-index `m` (1-based) names the block value.
    Sl { coeff: Expr, block: Vec<usize> },
}

impl BlockEntry {
    pub fn size(&self) -> usize {
        match self {
            BlockEntry::Scalar(_) => 1,
            BlockEntry::Sl { block, .. } => block.len(),
        }
    }
}

impl fmt::Display for BlockEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockEntry::Scalar(e) => write!(f, "{e}"),
            BlockEntry::Sl { coeff, block } => {
                if *coeff != Expr::one() {
                    if matches!(coeff, Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_)) {
                        write!(f, "({coeff})")?;
                    } else {
                        write!(f, "{coeff}")?;
                    }
                }
                let idx: String = block.iter().map(|&i| index_label(i)).collect();
                write!(f, "S_{{{idx}}}")
            }
        }
    }
}

/// Block-diagonal part of an automorphism, e.g. `(ab^2,ab,a,b)` or `(S_{12},aS_{12})`.
#[derive(Clone, PartialEq, Debug)]
pub struct BlockPattern {
    pub entries: Vec<BlockEntry>,
}

impl BlockPattern {
    pub fn identity(dim: usize) -> Self {
        BlockPattern {
            entries: vec![BlockEntry::Scalar(Expr::one()); dim],
        }
    }

    pub fn size(&self) -> usize {
        self.entries.iter().map(BlockEntry::size).sum()
    }

    /// Symbols that must be assigned nonzero values.
    pub fn symbols(&self) -> BTreeSet<String> {
        self.entries
            .iter()
            .flat_map(|e| match e {
                BlockEntry::Scalar(x) | BlockEntry::Sl { coeff: x, .. } => x.symbols(),
            })
            .collect()
    }

    /// Distinct SL multi-indices in order of first appearance.
    pub fn sl_blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for e in &self.entries {
            if let BlockEntry::Sl { block, .. } = e {
                if !out.contains(block) {
                    out.push(block.clone());
                }
            }
        }
        out
    }

    /// Checks the total size and that every SL multi-index is contiguous
    /// and sits at its own position the first time it appears.
    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.size() != dim {
            return Err(Error::InvalidDescriptor(format!(
                "block pattern {self} has size {}, algebra has dimension {dim}",
                self.size()
            )));
        }
        let mut offset = 0;
        let mut seen = BTreeSet::new();
        for e in &self.entries {
            if let BlockEntry::Sl { block, .. } = e {
                let contiguous = block.windows(2).all(|w| w[1] == w[0] + 1);
                if block.len() < 2 || !contiguous {
                    return Err(Error::InvalidDescriptor(format!(
                        "SL multi-index in {e} must be contiguous with at least two entries"
                    )));
                }
                if seen.insert(block.clone()) && block[0] != offset + 1 {
                    return Err(Error::InvalidDescriptor(format!(
                        "{e} first appears at position {}",
                        offset + 1
                    )));
                }
            }
            offset += e.size();
        }
        Ok(())
    }

    pub fn instance(&self, env: &Env, sl: &BTreeMap<Vec<usize>, QMatrix>) -> Result<QMatrix> {
        for s in self.symbols() {
            match env.get(&s) {
                None => return Err(Error::MissingSymbol(s)),
                Some(v) if v.is_zero() => return Err(Error::ZeroSymbol(s)),
                _ => {}
            }
        }
        let n = self.size();
        let mut out = QMatrix::zeros(n, n);
        let mut offset = 0;
        for e in &self.entries {
            match e {
                BlockEntry::Scalar(x) => out.set(offset, offset, x.eval(env)?),
                BlockEntry::Sl { coeff, block } => {
                    let label: String = block.iter().map(|&i| index_label(i)).collect();
                    let s = sl.get(block).ok_or_else(|| Error::MissingSymbol(format!("S_{{{label}}}")))?;
                    if s.shape() != (block.len(), block.len()) {
                        return Err(Error::LengthMismatch {
                            expected: block.len(),
                            got: s.nrows(),
                        });
                    }
                    let det = s.det()?;
                    if !det.is_one() {
                        return Err(Error::SlDeterminant {
                            block: label,
                            det: det.to_string(),
                        });
                    }
                    out.set_block(offset, offset, &s.scale(&coeff.eval(env)?));
                }
            }
            offset += e.size();
        }
        Ok(out)
    }
}

impl fmt::Display for BlockPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A matrix family given entrywise by expressions in free symbols.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixTemplate {
    pub name: String,
    pub entries: Vec<Vec<Expr>>,
}

impl MatrixTemplate {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.entries.iter().flatten().flat_map(Expr::symbols).collect()
    }

    pub fn instance(&self, env: &Env) -> Result<QMatrix> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.eval(env)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(QMatrix::from_rows(rows)?)
    }

    /// Binds some symbols to values, leaving the rest free.
    pub fn substitute(&self, env: &Env) -> MatrixTemplate {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.substitute(env)).collect())
            .collect();
        MatrixTemplate {
            name: self.name.clone(),
            entries,
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct AutDescriptor {
    pub dim: usize,
    pub discrete: Vec<DiscreteGen>,
    pub outer: Vec<OuterDer>,
    pub block: BlockPattern,
    /// Full-matrix family applied after the block factor.
    pub family: Option<MatrixTemplate>,
    pub notes: Vec<String>,
}

impl AutDescriptor {
    pub fn trivial(dim: usize) -> Self {
        AutDescriptor {
            dim,
            discrete: Vec::new(),
            outer: Vec::new(),
            block: BlockPattern::identity(dim),
            family: None,
            notes: Vec::new(),
        }
    }

    pub fn discrete_matrices(&self) -> Result<Vec<QMatrix>> {
        self.discrete.iter().map(|g| g.matrix(self.dim)).collect()
    }

    pub fn outer_matrices(&self) -> Result<Vec<QMatrix>> {
        self.outer.iter().map(|d| d.matrix(self.dim)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.block.validate(self.dim)?;
        self.discrete_matrices()?;
        self.outer_matrices()?;
        if let Some(t) = &self.family {
            if t.dim() != self.dim || t.entries.iter().any(|r| r.len() != self.dim) {
                return Err(Error::InvalidDescriptor(format!(
                    "family {} is not {}x{}",
                    t.name, self.dim, self.dim
                )));
            }
        }
        Ok(())
    }
}

/// Parameter choice for [`reconstruct`]. Empty parameter vectors mean all zero.
#[derive(Clone, PartialEq, Debug)]
pub struct ReconstructionChoice<T> {
    pub inner_params: Vec<T>,
    pub discrete_word: Vec<usize>,
    pub outer_params: Vec<T>,
    /// Values of the block and family symbols.
    pub scalars: Env,
    pub sl_blocks: BTreeMap<Vec<usize>, QMatrix>,
}

impl<T> Default for ReconstructionChoice<T> {
    fn default() -> Self {
        ReconstructionChoice {
            inner_params: Vec::new(),
            discrete_word: Vec::new(),
            outer_params: Vec::new(),
            scalars: Env::new(),
            sl_blocks: BTreeMap::new(),
        }
    }
}

impl<T: Scalar> ReconstructionChoice<T> {
    /// Choice giving the identity (or the family at the given symbol values).
    pub fn identity(desc: &AutDescriptor) -> Self {
        let mut c = ReconstructionChoice::default();
        for s in desc.block.symbols() {
            c.scalars.insert(s, Rational::one());
        }
        for b in desc.block.sl_blocks() {
            c.sl_blocks.insert(b.clone(), QMatrix::identity(b.len()));
        }
        c
    }
}

fn params_or_zero<T: Scalar>(v: &[T], n: usize) -> Result<Vec<T>> {
    match v.len() {
        0 => Ok(vec![T::zero(); n]),
        k if k == n => Ok(v.to_vec()),
        k => Err(Error::ParameterCount(k, n)),
    }
}

pub fn reconstruct<T: Scalar>(
    alg: &LieAlgebra,
    desc: &AutDescriptor,
    choice: &ReconstructionChoice<T>,
) -> Result<Matrix<T>> {
    let r = alg.dim();
    if desc.dim != r {
        return Err(Error::LengthMismatch {
            expected: r,
            got: desc.dim,
        });
    }
    let eps = params_or_zero(&choice.inner_params, r)?;
    let alpha = params_or_zero(&choice.outer_params, desc.outer.len())?;

    let mut b = Matrix::<T>::identity(r);
    for (j, e) in eps.iter().enumerate() {
        b = &b * &inner_one_param(alg, j, e)?;
    }
    for &w in &choice.discrete_word {
        let g = desc.discrete.get(w).ok_or(Error::UnknownGenerator(w))?;
        b = &b * &g.matrix(r)?.to_scalar();
    }
    for (d, a) in desc.outer.iter().zip(&alpha) {
        b = &b * &exp_generator(&d.matrix(r)?, a)?;
    }
    b = &b * &desc.block.instance(&choice.scalars, &choice.sl_blocks)?.to_scalar();
    if let Some(t) = &desc.family {
        let m = t.instance(&choice.scalars)?;
        if m.det()?.is_zero() {
            return Err(Error::SingularResult);
        }
        b = &b * &m.to_scalar();
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::is_automorphism;
    use crate::scalar::int;

    fn a48() -> LieAlgebra {
        LieAlgebra::new(4, &[(2, 3, 1, int(1)), (2, 4, 2, int(1)), (3, 4, 3, int(-1))]).unwrap()
    }

    fn a48_desc() -> AutDescriptor {
        let t = |i, j| WeylTerm { i, j, c: int(1) };
        AutDescriptor {
            dim: 4,
            discrete: vec![
                DiscreteGen::sign_mask(vec![0, 1]),
                DiscreteGen::tuple(vec![
                    SignedBasis::neg(0),
                    SignedBasis::pos(2),
                    SignedBasis::pos(1),
                    SignedBasis::neg(3),
                ]),
            ],
            outer: vec![
                OuterDer {
                    terms: vec![t(0, 0), t(2, 2)],
                    range_param: None,
                },
                OuterDer {
                    terms: vec![t(3, 0)],
                    range_param: None,
                },
            ],
            block: BlockPattern::identity(4),
            family: None,
            notes: Vec::new(),
        }
    }

    #[test]
    fn zero_choice_is_identity() {
        let c = ReconstructionChoice::<Rational>::identity(&a48_desc());
        assert_eq!(reconstruct(&a48(), &a48_desc(), &c).unwrap(), QMatrix::identity(4));
    }

    #[test]
    fn outer_shear_entry() {
        let c = ReconstructionChoice {
            outer_params: vec![0.0, 2.5],
            ..Default::default()
        };
        let b = reconstruct(&a48(), &a48_desc(), &c).unwrap();
        let mut want = Matrix::<f64>::identity(4);
        want.set(3, 0, 2.5);
        assert!(b.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn word_and_errors() {
        let desc = a48_desc();
        let c = ReconstructionChoice::<Rational> {
            discrete_word: vec![1, 0, 1],
            inner_params: vec![int(0), int(3), int(-2), int(0)],
            ..Default::default()
        };
        let b = reconstruct(&a48(), &desc, &c).unwrap();
        assert!(is_automorphism(&a48(), &b).unwrap());

        let bad = ReconstructionChoice::<Rational> {
            discrete_word: vec![2],
            ..Default::default()
        };
        assert_eq!(reconstruct(&a48(), &desc, &bad), Err(Error::UnknownGenerator(2)));
        let bad = ReconstructionChoice::<Rational> {
            outer_params: vec![int(1)],
            ..Default::default()
        };
        assert_eq!(reconstruct(&a48(), &desc, &bad), Err(Error::ParameterCount(1, 2)));
    }

    #[test]
    fn block_instances() {
        let a = Expr::parse("a").unwrap();
        let p = BlockPattern {
            entries: vec![
                BlockEntry::Sl {
                    coeff: Expr::one(),
                    block: vec![1, 2],
                },
                BlockEntry::Sl {
                    coeff: a,
                    block: vec![1, 2],
                },
            ],
        };
        assert_eq!(p.to_string(), "(S_{12},aS_{12})");
        p.validate(4).unwrap();
        assert!(p.validate(3).is_err());
        let s = QMatrix::from_rows(vec![vec![int(2), int(3)], vec![int(1), int(2)]]).unwrap();
        let mut sl = BTreeMap::new();
        sl.insert(vec![1, 2], s.clone());
        let mut env = Env::new();
        assert_eq!(p.instance(&env, &sl), Err(Error::MissingSymbol("a".into())));
        env.insert("a".into(), int(0));
        assert_eq!(p.instance(&env, &sl), Err(Error::ZeroSymbol("a".into())));
        env.insert("a".into(), int(-2));
        let m = p.instance(&env, &sl).unwrap();
        assert_eq!(m.submatrix(2, 2, 2, 2), s.scale(&int(-2)));
        assert_eq!(m.submatrix(0, 0, 2, 2), s);
        sl.insert(vec![1, 2], QMatrix::identity(2).scale(&int(2)));
        assert!(matches!(p.instance(&env, &sl), Err(Error::SlDeterminant { .. })));
    }

    #[test]
    fn misplaced_sl_block_is_rejected() {
        let p = BlockPattern {
            entries: vec![
                BlockEntry::Scalar(Expr::one()),
                BlockEntry::Sl {
                    coeff: Expr::one(),
                    block: vec![1, 2],
                },
            ],
        };
        assert!(p.validate(3).is_err());
    }
}
