//! JSON and text formats.
//!
//! Rationals are written as strings (`"3"`, `"-1/2"`) and matrices as arrays
//! of rows of such strings. Every writer here produces output that the
//! matching reader parses back to an identical value.

use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::automorphisms::{
    AutDescriptor, DiscreteGen, DiscreteKind, MatrixTemplate, OuterDer, WeylTerm,
};
use crate::catalog::dsl::{parse_block_pattern, parse_discrete, parse_tuple_items, parse_weyl};
use crate::decomposition::Decomposition;
use crate::direct_sum::SumAutDescriptor;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::matrix::Matrix;
use crate::scalar::{parse_rational, Rational, Scalar};

fn format_err(e: impl ToString) -> Error {
    Error::Format(e.to_string())
}

fn to_pretty<S: Serialize>(v: &S) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

pub type MatrixWire = Vec<Vec<String>>;

pub fn matrix_to_wire<T: Scalar>(m: &Matrix<T>) -> MatrixWire {
    (0..m.nrows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
        .collect()
}

pub fn matrix_from_wire<T: Scalar>(rows: &[Vec<String>]) -> Result<Matrix<T>> {
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| parse_rational(x).map(|q| T::from_rational(&q)).map_err(Error::Format))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows)?)
}

/// Reads a matrix given either as a JSON array of rows or as whitespace
/// separated text, one row per line. Blank lines and `#` comments are
/// ignored.
pub fn parse_matrix<T: Scalar>(text: &str) -> Result<Matrix<T>> {
    if text.trim_start().starts_with('[') {
        let v: serde_json::Value = serde_json::from_str(text).map_err(format_err)?;
        let rows = v
            .as_array()
            .ok_or_else(|| format_err("matrix must be an array of rows"))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| format_err("matrix row must be an array"))?
                    .iter()
                    .map(|x| match x {
                        serde_json::Value::String(s) => Ok(s.clone()),
                        serde_json::Value::Number(n) => Ok(n.to_string()),
                        other => Err(format_err(format!("bad matrix entry {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        return matrix_from_wire(&rows);
    }
    let rows: Vec<Vec<String>> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect();
    if rows.is_empty() {
        return Err(format_err("empty matrix"));
    }
    matrix_from_wire(&rows)
}

/// One row per line, entries separated by single spaces.
pub fn format_matrix<T: Scalar>(m: &Matrix<T>) -> String {
    matrix_to_wire(m)
        .iter()
        .map(|r| r.join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Serialize, Deserialize)]
struct BracketWire {
    i: usize,
    j: usize,
    k: usize,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct AlgebraWire {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    brackets: Vec<BracketWire>,
}

/// Reads the structure-constants format. The Jacobi identity is not
/// checked here.
pub fn algebra_from_json(text: &str) -> Result<LieAlgebra> {
    let w: AlgebraWire = serde_json::from_str(text).map_err(format_err)?;
    let brackets = w
        .brackets
        .iter()
        .map(|b| Ok((b.i, b.j, b.k, parse_rational(&b.c).map_err(Error::Format)?)))
        .collect::<Result<Vec<_>>>()?;
    let alg = LieAlgebra::new_unchecked(w.dim, &brackets)?;
    Ok(match w.label {
        Some(l) => alg.with_label(l),
        None => alg,
    })
}

/// Canonical form: brackets sorted by `(i, j, k)`, 1-based, nonzero only.
pub fn algebra_to_json(alg: &LieAlgebra) -> String {
    let brackets = alg
        .tensor()
        .entries()
        .map(|(i, j, k, c)| BracketWire {
            i: i + 1,
            j: j + 1,
            k: k + 1,
            c: c.to_string(),
        })
        .collect();
    to_pretty(&AlgebraWire {
        dim: alg.dim(),
        label: alg.label().map(str::to_string),
        brackets,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DiscreteWire {
    /// `"p12"`, `"(-X_1,X_3,X_2)"` or `"((…))"`.
    Notation(String),
    Tuple {
        tuple: Vec<String>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        weyl: bool,
    },
    Matrix {
        name: String,
        matrix: MatrixWire,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermWire {
    pub i: usize,
    pub j: usize,
    pub c: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OuterWire {
    /// `"E_1^1+E_3^3"` or `"[E_1^1+E_2^2]_u"`.
    Notation(String),
    Terms {
        terms: Vec<TermWire>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        range: Option<String>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TemplateWire {
    pub name: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DescriptorWire {
    pub dim: usize,
    #[serde(default)]
    pub discrete: Vec<DiscreteWire>,
    #[serde(default)]
    pub outer: Vec<OuterWire>,
    /// Block pattern in table notation; the identity pattern when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<TemplateWire>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub fn discrete_from_wire(w: &DiscreteWire, dim: usize) -> Result<DiscreteGen> {
    match w {
        DiscreteWire::Notation(s) => parse_discrete(s, dim),
        DiscreteWire::Tuple { tuple, weyl } => {
            let mut g = DiscreteGen::tuple(parse_tuple_items(tuple, dim)?);
            g.weyl_reflection = *weyl;
            Ok(g)
        }
        DiscreteWire::Matrix { name, matrix } => Ok(DiscreteGen::explicit(name, matrix_from_wire(matrix)?)),
    }
}

pub fn discrete_to_wire(g: &DiscreteGen) -> DiscreteWire {
    match &g.kind {
        DiscreteKind::SignMask(_) => DiscreteWire::Notation(g.to_string()),
        DiscreteKind::SignedPermutation(t) => DiscreteWire::Tuple {
            tuple: t.iter().map(|x| x.to_string()).collect(),
            weyl: g.weyl_reflection,
        },
        DiscreteKind::Explicit(m) => DiscreteWire::Matrix {
            name: g.name.clone().unwrap_or_else(|| "matrix".to_string()),
            matrix: matrix_to_wire(m),
        },
    }
}

pub fn outer_from_wire(w: &OuterWire, dim: usize) -> Result<OuterDer> {
    match w {
        OuterWire::Notation(s) => parse_weyl(s, dim),
        OuterWire::Terms { terms, range } => {
            let terms = terms
                .iter()
                .map(|t| {
                    for idx in [t.i, t.j] {
                        if idx == 0 || idx > dim {
                            return Err(Error::IndexOutOfRange { index: idx, dim });
                        }
                    }
                    Ok(WeylTerm {
                        i: t.i - 1,
                        j: t.j - 1,
                        c: parse_rational(&t.c).map_err(Error::Format)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(OuterDer {
                terms,
                range_param: range.clone(),
            })
        }
    }
}

pub fn outer_to_wire(d: &OuterDer) -> OuterWire {
    OuterWire::Terms {
        terms: d
            .terms
            .iter()
            .map(|t| TermWire {
                i: t.i + 1,
                j: t.j + 1,
                c: t.c.to_string(),
            })
            .collect(),
        range: d.range_param.clone(),
    }
}

pub fn template_from_wire(w: &TemplateWire) -> Result<MatrixTemplate> {
    let entries = w
        .matrix
        .iter()
        .map(|r| r.iter().map(|e| Ok(Expr::parse(e)?)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(MatrixTemplate {
        name: w.name.clone(),
        entries,
    })
}

pub fn template_to_wire(t: &MatrixTemplate) -> TemplateWire {
    TemplateWire {
        name: t.name.clone(),
        matrix: t
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect(),
    }
}

pub fn descriptor_from_wire(w: &DescriptorWire) -> Result<AutDescriptor> {
    let dim = w.dim;
    let block = match &w.block {
        Some(b) => parse_block_pattern(b, dim)?,
        None => crate::automorphisms::BlockPattern::identity(dim),
    };
    let desc = AutDescriptor {
        dim,
        discrete: w
            .discrete
            .iter()
            .map(|g| discrete_from_wire(g, dim))
            .collect::<Result<_>>()?,
        outer: w.outer.iter().map(|d| outer_from_wire(d, dim)).collect::<Result<_>>()?,
        block,
        family: w.family.as_ref().map(template_from_wire).transpose()?,
        notes: w.notes.clone(),
    };
    desc.validate()?;
    Ok(desc)
}

pub fn descriptor_to_wire(d: &AutDescriptor) -> DescriptorWire {
    DescriptorWire {
        dim: d.dim,
        discrete: d.discrete.iter().map(discrete_to_wire).collect(),
        outer: d.outer.iter().map(outer_to_wire).collect(),
        block: Some(d.block.to_string()),
        family: d.family.as_ref().map(template_to_wire),
        notes: d.notes.clone(),
    }
}

pub fn descriptor_from_json(text: &str) -> Result<AutDescriptor> {
    let w: DescriptorWire = serde_json::from_str(text).map_err(format_err)?;
    descriptor_from_wire(&w)
}

pub fn descriptor_to_json(d: &AutDescriptor) -> String {
    to_pretty(&descriptor_to_wire(d))
}

/// An algebra together with a descriptor of its automorphism group, the
/// input of `aut-sample` when no catalog entry is named.
#[derive(Serialize, Deserialize)]
struct DescribedAlgebraWire {
    algebra: serde_json::Value,
    descriptor: DescriptorWire,
}

pub fn described_algebra_from_json(text: &str) -> Result<(LieAlgebra, AutDescriptor)> {
    let w: DescribedAlgebraWire = serde_json::from_str(text).map_err(format_err)?;
    let alg = algebra_from_json(&w.algebra.to_string())?;
    let desc = descriptor_from_wire(&w.descriptor)?;
    if desc.dim != alg.dim() {
        return Err(Error::LengthMismatch {
            expected: alg.dim(),
            got: desc.dim,
        });
    }
    Ok((alg, desc))
}

pub fn described_algebra_to_json(alg: &LieAlgebra, desc: &AutDescriptor) -> String {
    let algebra: serde_json::Value = serde_json::from_str(&algebra_to_json(alg)).expect("valid json");
    to_pretty(&DescribedAlgebraWire {
        algebra,
        descriptor: descriptor_to_wire(desc),
    })
}

#[derive(Serialize, Deserialize)]
struct ComponentWire {
    basis: MatrixWire,
    projection: MatrixWire,
    central: bool,
}

#[derive(Serialize, Deserialize)]
struct DecompositionWire {
    components: Vec<ComponentWire>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    transcript: Vec<String>,
}

pub fn decomposition_to_json(dec: &Decomposition) -> String {
    let components = dec
        .components
        .iter()
        .zip(&dec.projections)
        .zip(&dec.central)
        .map(|((c, p), &central)| ComponentWire {
            basis: matrix_to_wire(c.basis()),
            projection: matrix_to_wire(p),
            central,
        })
        .collect();
    to_pretty(&DecompositionWire {
        components,
        transcript: dec.transcript.clone(),
    })
}

/// Reads the component bases of a decomposition and rebuilds it against
/// `alg`, so projections and central flags are recomputed and checked.
pub fn decomposition_from_json(alg: &LieAlgebra, text: &str) -> Result<Decomposition> {
    let w: DecompositionWire = serde_json::from_str(text).map_err(format_err)?;
    let comps = w
        .components
        .iter()
        .map(|c| Ok(crate::subspace::Subspace::from_matrix(&matrix_from_wire::<Rational>(&c.basis)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut dec = Decomposition::from_components(alg, comps)?;
    dec.transcript = w.transcript;
    Ok(dec)
}

#[derive(Serialize)]
struct SumDescriptorWire {
    components: Vec<DescriptorWire>,
    offsets: Vec<usize>,
    classes: Vec<Vec<usize>>,
    identifications: Vec<MatrixWire>,
    zeta: Vec<MatrixWire>,
}

pub fn sum_descriptor_to_json(d: &SumAutDescriptor) -> String {
    to_pretty(&SumDescriptorWire {
        components: d.parts.iter().map(descriptor_to_wire).collect(),
        offsets: d.sum.offsets.clone(),
        classes: d.classes.clone(),
        identifications: d.identifications.iter().map(matrix_to_wire).collect(),
        zeta: d.zeta.basis.iter().map(matrix_to_wire).collect(),
    })
}

/// Parses `k=v,k=v` parameter assignments.
pub fn parse_params(text: &str) -> Result<crate::expr::Env> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parameters(format!("expected name=value, got {kv:?}")))?;
            Ok((k.trim().to_string(), parse_rational(v).map_err(Error::Parameters)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::{BlockPattern, SignedBasis};
    use crate::matrix::QMatrix;
    use crate::scalar::{frac, int};

    fn a48() -> LieAlgebra {
        LieAlgebra::new(4, &[(2, 3, 1, int(1)), (2, 4, 2, int(1)), (3, 4, 3, int(-1))]).unwrap()
    }

    #[test]
    fn algebra_round_trip() {
        let alg = a48().with_label("A_{4,8}");
        let text = algebra_to_json(&alg);
        let back = algebra_from_json(&text).unwrap();
        assert_eq!(back, alg);
        assert_eq!(algebra_to_json(&back), text);
        let shuffled = r#"{"dim":3,"brackets":[{"i":2,"j":3,"k":1,"c":"-1/2"},{"i":1,"j":3,"k":1,"c":"2/4"}]}"#;
        let alg = algebra_from_json(shuffled).unwrap();
        let canon = algebra_to_json(&alg);
        assert!(canon.find("\"i\": 1").unwrap() < canon.find("\"i\": 2").unwrap());
        assert!(canon.contains("\"1/2\"") && canon.contains("\"-1/2\""));
        assert!(!canon.contains("label"));
    }

    #[test]
    fn algebra_rejects_bad_input() {
        let swapped = r#"{"dim":3,"brackets":[{"i":3,"j":1,"k":1,"c":"1"}]}"#;
        assert!(matches!(algebra_from_json(swapped), Err(Error::UnorderedBracket { i: 3, j: 1 })));
        let range = r#"{"dim":2,"brackets":[{"i":1,"j":2,"k":3,"c":"1"}]}"#;
        assert!(matches!(algebra_from_json(range), Err(Error::IndexOutOfRange { index: 3, dim: 2 })));
        assert!(matches!(algebra_from_json("{"), Err(Error::Format(_))));
    }

    #[test]
    fn matrices() {
        let m: QMatrix = parse_matrix("1 -1/2\n# comment\n0   3\n").unwrap();
        assert_eq!(m, QMatrix::from_rows(vec![vec![int(1), frac(-1, 2)], vec![int(0), int(3)]]).unwrap());
        assert_eq!(format_matrix(&m), "1 -1/2\n0 3");
        let j: QMatrix = parse_matrix(r#"[["1","-1/2"],[0,3]]"#).unwrap();
        assert_eq!(j, m);
        assert_eq!(parse_matrix::<Rational>(&format_matrix(&m)).unwrap(), m);
        let f = Matrix::<f64>::from_rows(vec![vec![std::f64::consts::E, -1e-7]]).unwrap();
        let back: Matrix<f64> = parse_matrix(&format_matrix(&f)).unwrap();
        assert_eq!(back, f);
        assert!(parse_matrix::<Rational>("1 2\n3").is_err());
        assert!(parse_matrix::<Rational>("").is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let d = AutDescriptor {
            dim: 4,
            discrete: vec![
                DiscreteGen::sign_mask(vec![0, 1]),
                DiscreteGen::tuple(vec![
                    SignedBasis::neg(0),
                    SignedBasis::pos(2),
                    SignedBasis::pos(1),
                    SignedBasis::neg(3),
                ]),
                DiscreteGen::explicit("J", QMatrix::from_diagonal(&[int(1), int(-1), int(-1), int(1)])),
            ],
            outer: vec![
                parse_weyl("E_1^1+E_3^3", 4).unwrap(),
                parse_weyl("[E_4^1-(1/2)E_2^3]_u", 4).unwrap(),
            ],
            block: BlockPattern::identity(4),
            family: Some(MatrixTemplate {
                name: "F".into(),
                entries: (0..4)
                    .map(|i| {
                        (0..4)
                            .map(|j| match (i, j) {
                                (0, 0) => Expr::parse("a").unwrap(),
                                (3, 0) => Expr::parse("-wb").unwrap(),
                                _ if i == j => Expr::one(),
                                _ => Expr::parse("0").unwrap(),
                            })
                            .collect()
                    })
                    .collect(),
            }),
            notes: vec!["n".into()],
        };
        let text = descriptor_to_json(&d);
        assert!(text.contains("\"p12\""));
        assert!(text.contains("\"-X_1\""));
        assert!(text.contains("\"range\": \"u\""));
        assert!(text.contains("\"c\": \"-1/2\""));
        let back = descriptor_from_json(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(descriptor_to_json(&back), text);

        let notation = r#"{"dim":3,"discrete":["p1","((X_3,-X_2,X_1))"],"outer":["E_1^1"],"block":"(a,a,1)"}"#;
        let d = descriptor_from_json(notation).unwrap();
        assert!(d.discrete[1].weyl_reflection);
        assert_eq!(d.block.to_string(), "(a,a,1)");
        let bad = r#"{"dim":2,"discrete":["p3"]}"#;
        assert!(descriptor_from_json(bad).is_err());
    }

    #[test]
    fn template_round_trip() {
        let t = MatrixTemplate {
            name: "B".into(),
            entries: vec![vec![Expr::parse("-wd").unwrap(), Expr::parse("k1").unwrap()]],
        };
        assert_eq!(template_from_wire(&template_to_wire(&t)).unwrap(), t);
    }

    #[test]
    fn params() {
        let p = parse_params("u=1/2, v=-3,w=0.25").unwrap();
        assert_eq!(p["u"], frac(1, 2));
        assert_eq!(p["v"], int(-3));
        assert_eq!(p["w"], frac(1, 4));
        assert!(parse_params("u").is_err());
        assert!(parse_params("").unwrap().is_empty());
    }
}
