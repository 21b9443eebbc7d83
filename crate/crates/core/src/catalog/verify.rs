use std::fmt;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{format_env, random_rational, sample_choice, CatalogEntry, NegativeCheck};
use crate::algebra::LieAlgebra;
use crate::automorphisms::{
    automorphism_report, exp_generator, group_closure, inner_one_param, is_automorphism,
    is_derivation, is_inner_derivation, reconstruct, AutDescriptor, DEFAULT_CLOSURE_CAP,
};
use crate::error::Result;
use crate::expr::Env;
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar, Tolerance, DEFAULT_TOLERANCE};

#[derive(Clone, Debug, PartialEq)]
pub struct ReportLine {
    pub entry: String,
    pub params: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.entry)?;
        if !self.params.is_empty() {
            write!(f, " [{}]", self.params)?;
        }
        write!(f, " {}", self.check)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CatalogReport {
    pub lines: Vec<ReportLine>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportLine> {
        self.lines.iter().filter(|l| !l.passed)
    }

    pub fn for_entry<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a ReportLine> + 'a {
        self.lines.iter().filter(move |l| l.entry == name)
    }
}

impl fmt::Display for CatalogReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.lines.len(), failed)
    }
}

struct Recorder<'a> {
    entry: &'a str,
    params: String,
    lines: Vec<ReportLine>,
}

impl Recorder<'_> {
    fn push(&mut self, check: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.lines.push(ReportLine {
            entry: self.entry.to_string(),
            params: self.params.clone(),
            check: check.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn outcome(&mut self, check: impl Into<String>, r: Result<bool>, ok: &str, bad: &str) {
        match r {
            Ok(p) => self.push(check, p, if p { ok } else { bad }),
            Err(e) => self.push(check, false, e.to_string()),
        }
    }
}

/// Float check with a tolerance scaled to the size of the matrix entries.
fn numeric_holds<T: Scalar>(alg: &LieAlgebra, b: &Matrix<T>) -> Result<bool> {
    let scale = b.entries().iter().fold(1.0f64, |m, x| m.max(x.magnitude()));
    let tol = Tolerance(DEFAULT_TOLERANCE * scale * scale);
    Ok(automorphism_report(alg, b, tol)?.holds)
}

fn sample_holds<T: Scalar>(alg: &LieAlgebra, desc: &AutDescriptor, rng: &mut ChaCha8Rng) -> Result<bool> {
    let choice = sample_choice::<T>(alg, desc, rng)?;
    let b = reconstruct(alg, desc, &choice)?;
    if T::EXACT {
        is_automorphism(alg, &b)
    } else {
        numeric_holds(alg, &b)
    }
}

fn verify_point(entry: &CatalogEntry, params: &Env, samples: usize, seed: u64) -> Vec<ReportLine> {
    let mut rec = Recorder {
        entry: &entry.name,
        params: format_env(params),
        lines: Vec::new(),
    };
    let alg = match entry.instantiate(params) {
        Ok(a) => {
            rec.push("jacobi", true, "");
            a
        }
        Err(e) => {
            rec.push("jacobi", false, e.to_string());
            return rec.lines;
        }
    };
    let desc = match entry.descriptor(params) {
        Ok(d) => {
            rec.push("descriptor", true, d.notes.join("; "));
            d
        }
        Err(e) => {
            rec.push("descriptor", false, e.to_string());
            return rec.lines;
        }
    };
    let r = alg.dim();

    let mut discrete = Vec::new();
    for g in &desc.discrete {
        let check = format!("discrete {g}");
        match g.matrix(r) {
            Ok(m) => {
                rec.outcome(check, is_automorphism(&alg, &m), "", "not an automorphism");
                discrete.push(m);
            }
            Err(e) => rec.push(check, false, e.to_string()),
        }
    }
    if !discrete.is_empty() {
        match group_closure(&discrete, DEFAULT_CLOSURE_CAP) {
            Ok(g) => rec.push("discrete closure", true, format!("order {}", g.len())),
            Err(e) => rec.push("discrete closure", false, e.to_string()),
        }
    }

    for d in &desc.outer {
        let check = format!("outer {d}");
        let m = match d.matrix(r) {
            Ok(m) => m,
            Err(e) => {
                rec.push(check, false, e.to_string());
                continue;
            }
        };
        let derivation = is_derivation(&alg, &m).unwrap_or(false);
        let inner = is_inner_derivation(&alg, &m).unwrap_or(true);
        let mut exp_ok = true;
        for a in [1.0, -1.0, 0.5, -0.5] {
            exp_ok &= exp_generator::<f64>(&m, &a)
                .and_then(|b| numeric_holds(&alg, &b))
                .unwrap_or(false);
        }
        let passed = derivation && exp_ok && (d.range_param.is_some() || !inner);
        let detail = match (derivation, inner, exp_ok) {
            (false, _, _) => "not a derivation",
            (_, true, _) if d.range_param.is_none() => "inner derivation",
            (_, _, false) => "exponential is not an automorphism",
            _ => "",
        };
        rec.push(check, passed, detail);
    }

    let mut inner_ok = true;
    for j in 0..r {
        inner_ok &= inner_one_param::<f64>(&alg, j, &1.0)
            .and_then(|b| numeric_holds(&alg, &b))
            .unwrap_or(false);
    }
    rec.push("inner one-parameter groups", inner_ok, "");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for k in 0..samples {
        if !sample_holds::<Rational>(&alg, &desc, &mut rng).unwrap_or(false) {
            bad.push(k);
        }
    }
    rec.push(
        format!("{samples} exact samples"),
        bad.is_empty(),
        if bad.is_empty() { String::new() } else { format!("failing draws {bad:?}") },
    );
    let mut bad = Vec::new();
    for k in 0..samples {
        if !sample_holds::<f64>(&alg, &desc, &mut rng).unwrap_or(false) {
            bad.push(k);
        }
    }
    rec.push(
        format!("{samples} numeric samples"),
        bad.is_empty(),
        if bad.is_empty() { String::new() } else { format!("failing draws {bad:?}") },
    );
    rec.lines
}

/// A negative check passes when the generator or a generic family member is
/// *not* an automorphism at the given parameters.
fn verify_negative(entry: &CatalogEntry, neg: &NegativeCheck, seed: u64) -> ReportLine {
    let mut rec = Recorder {
        entry: &entry.name,
        params: format_env(&neg.at),
        lines: Vec::new(),
    };
    let alg = match entry.instantiate(&neg.at) {
        Ok(a) => a,
        Err(e) => {
            rec.push("negative", false, e.to_string());
            return rec.lines.remove(0);
        }
    };
    let (check, matrix) = match (&neg.generator, &neg.family) {
        (Some(g), _) => (format!("{g} rejected"), entry.generator_matrix(g, &neg.at)),
        (None, Some(f)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = entry.family_template(f, &neg.at).and_then(|t| {
                for _ in 0..100 {
                    let env: Env = t
                        .symbols()
                        .into_iter()
                        .map(|s| (s, random_rational(&mut rng, 3, true)))
                        .collect();
                    let m = t.instance(&env)?;
                    if !m.det()?.is_zero() {
                        return Ok(m);
                    }
                }
                Err(crate::Error::SingularResult)
            });
            (format!("{f} rejected"), m)
        }
        (None, None) => ("negative".to_string(), Err(crate::Error::UnknownEntry(entry.name.clone()))),
    };
    let r = matrix.and_then(|m| is_automorphism(&alg, &m));
    rec.outcome(check, r.map(|holds| !holds), "", "is an automorphism");
    rec.lines.remove(0)
}

fn verify_entry(entry: &CatalogEntry, samples: usize, seed: u64) -> Vec<ReportLine> {
    let mut lines = Vec::new();
    for (k, p) in entry.grid.iter().enumerate() {
        lines.extend(verify_point(entry, p, samples, seed.wrapping_add(k as u64)));
    }
    for (k, n) in entry.negative.iter().enumerate() {
        lines.push(verify_negative(entry, n, seed.wrapping_add(1000 + k as u64)));
    }
    lines
}

/// Checks every catalog entry at each of its grid points: the Jacobi
/// identity, every discrete and outer generator, the inner one-parameter
/// groups, and `samples` random exact and numeric reconstructions.
pub fn verify_catalog(samples: usize, seed: u64) -> CatalogReport {
    let entries = &super::catalog().entries;
    let lines = entries
        .par_iter()
        .enumerate()
        .map(|(k, e)| verify_entry(e, samples, seed.wrapping_mul(31).wrapping_add(k as u64)))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    CatalogReport { lines }
}
