//! Automorphism groups of the indecomposable real Lie algebras of dimension
//! 2 to 4, plus `A_{5,17}^{u,v,w}`, as checkable data.

pub mod dsl;
mod verify;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

pub use dsl::{parse_block_pattern, parse_discrete, parse_weyl};
pub use verify::{verify_catalog, CatalogReport, ReportLine};

use crate::algebra::LieAlgebra;
use crate::automorphisms::{
    is_derivation, is_inner_derivation, reconstruct, AutDescriptor, BlockPattern, DiscreteGen,
    MatrixTemplate, OuterDer, ReconstructionChoice,
};
use crate::error::{Error, Result};
use crate::expr::{Constraint, Env, Expr};
use crate::io::{discrete_from_wire, outer_from_wire, DiscreteWire, OuterWire};
use crate::matrix::{Matrix, QMatrix};
use crate::scalar::{parse_rational, Rational, Scalar};

static DATA: &str = include_str!("../../data/catalog.json");

#[derive(Deserialize)]
struct RawCatalog {
    entries: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawGenerator {
    Notation(String),
    Matrix(Vec<Vec<String>>),
}

#[derive(Deserialize)]
struct RawCase {
    when: Vec<String>,
    #[serde(default)]
    add_discrete: Vec<String>,
    family: Option<String>,
}

#[derive(Deserialize)]
struct RawNegative {
    generator: Option<String>,
    family: Option<String>,
    at: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct RawEntry {
    name: String,
    base: String,
    table: u8,
    note: String,
    dim: usize,
    params: Vec<String>,
    constraints: Vec<String>,
    grid: Vec<BTreeMap<String, String>>,
    brackets: Vec<(usize, usize, usize, String)>,
    discrete: Vec<DiscreteWire>,
    outer: Vec<OuterWire>,
    block: String,
    family: Option<String>,
    #[serde(default)]
    families: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    generators: BTreeMap<String, RawGenerator>,
    #[serde(default)]
    cases: Vec<RawCase>,
    #[serde(default)]
    negative: Vec<RawNegative>,
}

/// A named generator that is not written in table notation.
#[derive(Clone, Debug, PartialEq)]
pub enum NamedGenerator {
    Notation(String),
    Matrix(Vec<Vec<Expr>>),
}

/// Special parameter region that changes the descriptor.
#[derive(Clone, Debug, PartialEq)]
pub struct Case {
    pub when: Vec<Constraint>,
    pub add_discrete: Vec<String>,
    pub family: Option<String>,
}

impl Case {
    pub fn applies(&self, env: &Env) -> Result<bool> {
        for c in &self.when {
            if !c.holds(env)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn describe(&self) -> String {
        let cond: Vec<String> = self.when.iter().map(|c| c.to_string()).collect();
        let mut effects: Vec<String> = self.add_discrete.iter().map(|g| format!("adds {g}")).collect();
        if let Some(f) = &self.family {
            effects.push(format!("family {f}"));
        }
        format!("{}: {}", cond.join(", "), effects.join(", "))
    }
}

/// A generator or family that must *fail* at the given parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct NegativeCheck {
    pub generator: Option<String>,
    pub family: Option<String>,
    pub at: Env,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub base: String,
    pub table: u8,
    pub note: String,
    pub dim: usize,
    pub params: Vec<String>,
    pub constraints: Vec<Constraint>,
    /// Parameter points used by [`verify_catalog`].
    pub grid: Vec<Env>,
    pub brackets: Vec<(usize, usize, usize, Expr)>,
    pub discrete: Vec<DiscreteGen>,
    pub outer: Vec<OuterDer>,
    pub block: BlockPattern,
    pub family: Option<String>,
    pub families: BTreeMap<String, Vec<Vec<Expr>>>,
    pub generators: BTreeMap<String, NamedGenerator>,
    pub cases: Vec<Case>,
    pub negative: Vec<NegativeCheck>,
}

fn parse_env(raw: &BTreeMap<String, String>) -> Result<Env> {
    raw.iter()
        .map(|(k, v)| Ok((k.clone(), parse_rational(v).map_err(Error::Format)?)))
        .collect()
}

fn parse_grid(rows: &[Vec<String>]) -> Result<Vec<Vec<Expr>>> {
    rows.iter()
        .map(|r| r.iter().map(|e| Ok(Expr::parse(e)?)).collect())
        .collect()
}

impl CatalogEntry {
    fn from_raw(raw: RawEntry) -> Result<Self> {
        let constraints = raw
            .constraints
            .iter()
            .map(|c| Ok(Constraint::parse(c)?))
            .collect::<Result<Vec<_>>>()?;
        let grid = raw.grid.iter().map(parse_env).collect::<Result<Vec<_>>>()?;
        let brackets = raw
            .brackets
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, Expr::parse(c)?)))
            .collect::<Result<Vec<_>>>()?;
        let families = raw
            .families
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse_grid(v)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let generators = raw
            .generators
            .into_iter()
            .map(|(k, v)| {
                Ok((
                    k,
                    match v {
                        RawGenerator::Notation(s) => NamedGenerator::Notation(s),
                        RawGenerator::Matrix(m) => NamedGenerator::Matrix(parse_grid(&m)?),
                    },
                ))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        let cases = raw
            .cases
            .into_iter()
            .map(|c| {
                Ok(Case {
                    when: c.when.iter().map(|w| Ok(Constraint::parse(w)?)).collect::<Result<_>>()?,
                    add_discrete: c.add_discrete,
                    family: c.family,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let negative = raw
            .negative
            .iter()
            .map(|n| {
                Ok(NegativeCheck {
                    generator: n.generator.clone(),
                    family: n.family.clone(),
                    at: parse_env(&n.at)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CatalogEntry {
            name: raw.name,
            base: raw.base,
            table: raw.table,
            note: raw.note,
            dim: raw.dim,
            params: raw.params,
            constraints,
            grid,
            brackets,
            discrete: raw
                .discrete
                .iter()
                .map(|d| discrete_from_wire(d, raw.dim))
                .collect::<Result<_>>()?,
            outer: raw
                .outer
                .iter()
                .map(|d| outer_from_wire(d, raw.dim))
                .collect::<Result<_>>()?,
            block: parse_block_pattern(&raw.block, raw.dim)?,
            family: raw.family,
            families,
            generators,
            cases,
            negative,
        })
    }

    /// Checks that exactly the declared parameters are given and satisfy
    /// every constraint.
    pub fn check_params(&self, params: &Env) -> Result<()> {
        for p in &self.params {
            if !params.contains_key(p) {
                return Err(Error::Parameters(format!("{} requires parameter {p}", self.name)));
            }
        }
        if let Some(extra) = params.keys().find(|k| !self.params.contains(k)) {
            return Err(Error::Parameters(format!("{} has no parameter {extra}", self.name)));
        }
        for c in &self.constraints {
            if !c.holds(params)? {
                return Err(Error::Constraint(format!("{} requires {c}", self.name)));
            }
        }
        Ok(())
    }

    pub fn instantiate(&self, params: &Env) -> Result<LieAlgebra> {
        self.check_params(params)?;
        let brackets = self
            .brackets
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, c.eval(params)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LieAlgebra::new(self.dim, &brackets)?.with_label(self.label(params)))
    }

    /// Name with the parameter values appended, e.g. `A_{3,5}^u (u=1/2)`.
    pub fn label(&self, params: &Env) -> String {
        if params.is_empty() {
            return self.name.clone();
        }
        format!("{} ({})", self.name, format_env(params))
    }

    fn named_generator(&self, name: &str, params: &Env) -> Result<DiscreteGen> {
        match self.generators.get(name) {
            Some(NamedGenerator::Notation(s)) => {
                let mut g = parse_discrete(s, self.dim)?;
                g.name = Some(name.to_string());
                Ok(g)
            }
            Some(NamedGenerator::Matrix(m)) => {
                let t = MatrixTemplate {
                    name: name.to_string(),
                    entries: m.clone(),
                };
                Ok(DiscreteGen::explicit(name, t.instance(params)?))
            }
            None => parse_discrete(name, self.dim),
        }
    }

    pub fn family_template(&self, name: &str, params: &Env) -> Result<MatrixTemplate> {
        let entries = self
            .families
            .get(name)
            .ok_or_else(|| Error::InvalidDescriptor(format!("{} has no family {name}", self.name)))?;
        Ok(MatrixTemplate {
            name: name.to_string(),
            entries: entries.clone(),
        }
        .substitute(params))
    }

    /// Generator matrix of a named generator, evaluated without checking
    /// the parameter constraints or cases.
    pub fn generator_matrix(&self, name: &str, params: &Env) -> Result<QMatrix> {
        self.named_generator(name, params)?.matrix(self.dim)
    }

    pub fn descriptor(&self, params: &Env) -> Result<AutDescriptor> {
        let alg = self.instantiate(params)?;
        let mut discrete = self.discrete.clone();
        let outer = self.outer.clone();
        let block = self.block.clone();
        let mut family = self.family.clone();
        let mut notes = Vec::new();
        if !self.note.is_empty() {
            notes.push(self.note.clone());
        }
        for case in &self.cases {
            if case.applies(params)? {
                for g in &case.add_discrete {
                    discrete.push(self.named_generator(g, params)?);
                }
                if case.family.is_some() {
                    family.clone_from(&case.family);
                }
                notes.push(case.describe());
            }
        }
        let family = family.map(|f| self.family_template(&f, params)).transpose()?;
        let desc = AutDescriptor {
            dim: self.dim,
            discrete,
            outer,
            block,
            family,
            notes,
        };
        desc.validate()?;
        for d in &desc.outer {
            let m = d.matrix(self.dim)?;
            if !is_derivation(&alg, &m)? {
                return Err(Error::InvalidDescriptor(format!("{d} is not a derivation of {}", self.name)));
            }
            if d.range_param.is_none() && is_inner_derivation(&alg, &m)? {
                return Err(Error::InvalidDescriptor(format!("{d} is an inner derivation of {}", self.name)));
            }
        }
        Ok(desc)
    }
}

pub fn format_env(env: &Env) -> String {
    let parts: Vec<String> = env.iter().map(|(k, v)| format!("{k}={v}")).collect();
    parts.join(",")
}

pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn load(json: &str) -> Result<Self> {
        let raw: RawCatalog = serde_json::from_str(json).map_err(|e| Error::Format(e.to_string()))?;
        let entries = raw
            .entries
            .into_iter()
            .map(CatalogEntry::from_raw)
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalog { entries })
    }

    /// Finds an entry by exact name, by name ignoring `_{}^,` and spaces,
    /// or by base name when that is unambiguous.
    pub fn lookup(&self, name: &str) -> Result<&CatalogEntry> {
        if let Some(e) = self.entries.iter().find(|e| e.name == name) {
            return Ok(e);
        }
        let key = squash(name);
        if let Some(e) = self.entries.iter().find(|e| squash(&e.name) == key) {
            return Ok(e);
        }
        let by_base: Vec<&CatalogEntry> = self
            .entries
            .iter()
            .filter(|e| e.base == name || squash(&e.base) == key)
            .collect();
        match by_base.as_slice() {
            [e] => Ok(e),
            [] => Err(Error::UnknownEntry(name.to_string())),
            many => Err(Error::AmbiguousEntry(
                name.to_string(),
                many.iter().map(|e| e.name.clone()).collect(),
            )),
        }
    }
}

fn squash(name: &str) -> String {
    name.chars().filter(|c| !"_{}^, ".contains(*c)).collect()
}

/// The built-in catalog.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::load(DATA).expect("built-in catalog is well formed"))
}

/// `(name, note)` for every entry, in table order.
pub fn list_entries() -> Vec<(String, String)> {
    catalog()
        .entries
        .iter()
        .map(|e| (e.name.clone(), e.note.clone()))
        .collect()
}

pub fn instantiate(name: &str, params: &Env) -> Result<LieAlgebra> {
    catalog().lookup(name)?.instantiate(params)
}

pub fn descriptor(name: &str, params: &Env) -> Result<AutDescriptor> {
    catalog().lookup(name)?.descriptor(params)
}

pub(crate) fn random_rational(rng: &mut ChaCha8Rng, bound: i64, nonzero: bool) -> Rational {
    loop {
        let den = rng.gen_range(1..=4);
        let num = rng.gen_range(-bound * den..=bound * den);
        if !nonzero || num != 0 {
            return Rational::new(num.into(), den.into());
        }
    }
}

fn random_sl(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    let mut m = QMatrix::identity(n);
    for _ in 0..rng.gen_range(0..=4) {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let mut shear = QMatrix::identity(n);
        shear.set(i, j, random_rational(rng, 3, true));
        m = &m * &shear;
    }
    m
}

/// Random parameter choice for `desc`. In exact arithmetic the one-parameter
/// groups with non-nilpotent generators are left at zero.
pub fn sample_choice<T: Scalar>(
    alg: &LieAlgebra,
    desc: &AutDescriptor,
    rng: &mut ChaCha8Rng,
) -> Result<ReconstructionChoice<T>> {
    let param = |rng: &mut ChaCha8Rng, generator: &QMatrix| {
        if T::EXACT && !generator.is_nilpotent() {
            T::zero()
        } else {
            T::from_rational(&random_rational(rng, 2, false))
        }
    };
    let inner_params = alg
        .ad_matrices()
        .iter()
        .map(|c| param(rng, c))
        .collect();
    let outer_params = desc
        .outer_matrices()?
        .iter()
        .map(|d| param(rng, d))
        .collect();
    let discrete_word = if desc.discrete.is_empty() {
        Vec::new()
    } else {
        (0..rng.gen_range(0..=3))
            .map(|_| rng.gen_range(0..desc.discrete.len()))
            .collect()
    };
    let mut scalars = Env::new();
    for s in desc.block.symbols() {
        scalars.insert(s, random_rational(rng, 3, true));
    }
    let sl_blocks = desc
        .block
        .sl_blocks()
        .into_iter()
        .map(|b| {
            let n = b.len();
            (b, random_sl(rng, n))
        })
        .collect();
    if let Some(t) = &desc.family {
        let free: Vec<String> = t.symbols().into_iter().collect();
        let mut tries = 0;
        loop {
            let mut env = scalars.clone();
            for s in &free {
                env.insert(s.clone(), random_rational(rng, 3, false));
            }
            if !t.instance(&env)?.det()?.is_zero() {
                scalars = env;
                break;
            }
            tries += 1;
            if tries > 100 {
                return Err(Error::SingularResult);
            }
        }
    }
    Ok(ReconstructionChoice {
        inner_params,
        discrete_word,
        outer_params,
        scalars,
        sl_blocks,
    })
}

/// Draws an automorphism of the named entry from its descriptor.
pub fn sample_automorphism<T: Scalar>(name: &str, params: &Env, seed: u64) -> Result<Matrix<T>> {
    let entry = catalog().lookup(name)?;
    let alg = entry.instantiate(params)?;
    let desc = entry.descriptor(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let choice = sample_choice::<T>(&alg, &desc, &mut rng)?;
    reconstruct(&alg, &desc, &choice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::{is_automorphism, DiscreteKind};
    use crate::scalar::{frac, int};

    fn env(pairs: &[(&str, Rational)]) -> Env {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn entry_counts() {
        let c = catalog();
        assert_eq!(c.entries.iter().filter(|e| e.table == 1).count(), 10);
        assert_eq!(c.entries.iter().filter(|e| e.table == 2).count(), 17);
        assert_eq!(c.entries.len(), 28);
        let names = list_entries();
        assert!(names.contains(&("A_{3,8}".to_string(), "sl(2,ℝ)".to_string())));
        assert!(names.contains(&("A_{4,1}".to_string(), "nilpotent".to_string())));
        assert!(names.iter().any(|(n, _)| n == "A_{5,17}^{u,v,w}"));
    }

    #[test]
    fn lookup_rules() {
        let c = catalog();
        assert_eq!(c.lookup("A_{5,17}").unwrap().name, "A_{5,17}^{u,v,w}");
        assert_eq!(c.lookup("A48").unwrap().name, "A_{4,8}");
        assert_eq!(c.lookup("A_{4,5}^{u,1}(*)").unwrap().name, "A_{4,5}^{u,1}(*)");
        assert!(matches!(c.lookup("A_{4,2}"), Err(Error::AmbiguousEntry(..))));
        assert!(matches!(c.lookup("B_{1,1}"), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn instantiation() {
        let a48 = instantiate("A_{4,8}", &Env::new()).unwrap();
        assert_eq!(a48.tensor().get(1, 2, 0), int(1));
        assert_eq!(a48.tensor().get(1, 3, 1), int(1));
        assert_eq!(a48.tensor().get(2, 3, 2), int(-1));
        assert!(matches!(
            instantiate("A_{3,5}^u", &env(&[("u", int(1))])),
            Err(Error::Constraint(_))
        ));
        assert!(matches!(instantiate("A_{3,7}^u", &env(&[("u", int(0))])), Err(Error::Constraint(_))));
        assert!(matches!(instantiate("A_{3,5}^u", &Env::new()), Err(Error::Parameters(_))));
        assert!(matches!(
            instantiate("A_{4,8}", &env(&[("u", int(1))])),
            Err(Error::Parameters(_))
        ));
        let a517 = instantiate("A_{5,17}", &env(&[("u", int(0)), ("v", int(0)), ("w", int(1))])).unwrap();
        let t = a517.tensor();
        assert_eq!(t.get(0, 4, 1), int(-1));
        assert_eq!(t.get(1, 4, 0), int(1));
        assert_eq!(t.get(2, 4, 3), int(-1));
        assert_eq!(t.get(3, 4, 2), int(1));
        assert_eq!(t.get(0, 4, 0), int(0));
    }

    #[test]
    fn a48_descriptor() {
        let d = descriptor("A_{4,8}", &Env::new()).unwrap();
        let names: Vec<String> = d.discrete.iter().map(|g| g.to_string()).collect();
        assert_eq!(names, vec!["p12", "(-X_1,X_3,X_2,-X_4)"]);
        let outer: Vec<String> = d.outer.iter().map(|g| g.to_string()).collect();
        assert_eq!(outer, vec!["E_1^1+E_3^3", "E_4^1"]);
        assert_eq!(d.block.to_string(), "(1,1,1,1)");
        assert!(d.family.is_none());
    }

    #[test]
    fn a517_cases() {
        let p = |u, v, w| env(&[("u", int(u)), ("v", int(v)), ("w", int(w))]);
        let has = |d: &AutDescriptor, n: &str| d.discrete.iter().any(|g| g.name.as_deref() == Some(n));
        let d = descriptor("A_{5,17}", &p(1, -1, 1)).unwrap();
        assert!(has(&d, "B_2"));
        assert_eq!(d.family.as_ref().unwrap().name, "B_1");
        let d = descriptor("A_{5,17}", &p(2, 3, 5)).unwrap();
        assert!(d.discrete.is_empty());
        assert_eq!(d.family.as_ref().unwrap().name, "B_1");
        let d = descriptor("A_{5,17}", &p(1, 1, 1)).unwrap();
        assert_eq!(d.family.as_ref().unwrap().name, "B_3");
        let d = descriptor("A_{5,17}", &p(0, 0, 1)).unwrap();
        assert_eq!(d.family.as_ref().unwrap().name, "B_3");
        assert!(matches!(d.discrete[0].kind, DiscreteKind::SignMask(_)));
        let d = descriptor("A_{5,17}", &p(0, 0, 2)).unwrap();
        assert_eq!(d.family.as_ref().unwrap().name, "B_1");
        assert_eq!(d.discrete.len(), 1);
    }

    #[test]
    fn samples_verify() {
        let a21 = instantiate("A_{2,1}", &Env::new()).unwrap();
        for seed in 0..5 {
            let b = sample_automorphism::<Rational>("A_{2,1}", &Env::new(), seed).unwrap();
            assert!(is_automorphism(&a21, &b).unwrap());
            assert_eq!(b.get(0, 1), &int(0));
            assert_eq!(b.get(1, 1), &int(1));
        }
        let u = env(&[("u", frac(1, 2))]);
        let a37 = instantiate("A_{3,7}", &u).unwrap();
        let b = sample_automorphism::<f64>("A_{3,7}", &u, 3).unwrap();
        assert!(is_automorphism(&a37, &b).unwrap());
    }

    #[test]
    fn zero_choice_gives_identity() {
        let alg = instantiate("A_{4,8}", &Env::new()).unwrap();
        let d = descriptor("A_{4,8}", &Env::new()).unwrap();
        let b = reconstruct(&alg, &d, &ReconstructionChoice::<Rational>::identity(&d)).unwrap();
        assert_eq!(b, QMatrix::identity(4));
    }
}
