//! Command-line front end for `lieaut`.
//!
//! Every check prints one line starting with `PASS` or `FAIL`. The exit code
//! is 0 when no `FAIL` line was printed, 1 otherwise, and 2 for usage and
//! input errors.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use lieaut::automorphisms::{
    automorphism_report, inner_one_param, necessary_conditions, AutDescriptor, ReconstructionChoice,
};
use lieaut::catalog::{self, sample_choice};
use lieaut::decomposition::{decompose, DEFAULT_SWEEP_BUDGET};
use lieaut::direct_sum::{
    direct_sum, sum_descriptor, synthesize, theta_zeta_split, SumAutDescriptor, SumChoice,
};
use lieaut::expr::Env;
use lieaut::io::{self, format_matrix};
use lieaut::{Error, LieAlgebra, Matrix, QMatrix, Rational, Scalar, Subspace, Tolerance};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser, Debug)]
#[command(name = "lieaut", version, about = "Lie algebra automorphisms from structure constants")]
pub struct Cli {
    /// Transpose every printed matrix (left-invariant convention).
    #[arg(long, global = true)]
    pub transpose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check antisymmetry and the Jacobi identity.
    Validate { file: PathBuf },
    /// Centre, derived algebra, central series and Killing form.
    Invariants { file: PathBuf },
    /// Split into indecomposable ideals.
    Decompose {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SWEEP_BUDGET)]
        budget: usize,
        /// Print the decomposition as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Check whether a matrix is an automorphism.
    AutCheck {
        file: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        /// Floating-point arithmetic with tolerance.
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = lieaut::DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Draw random automorphisms from a catalog entry or a descriptor file.
    AutSample {
        /// JSON file holding {"algebra": …, "descriptor": …}.
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        catalog: Option<String>,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        numeric: bool,
    },
    /// List catalog entries.
    CatalogList,
    /// Verify every catalog entry over its parameter grid.
    CatalogVerify {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Direct sum of algebras.
    Sum {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Synthesize or verify automorphisms of a direct sum from its components.
    SumAut {
        /// The sum algebra.
        file: PathBuf,
        /// Components in order: catalog names (`NAME` or `NAME:u=1/2`) or
        /// descriptor files.
        #[arg(long, num_args = 1.., required = true)]
        components: Vec<String>,
        /// Verify this matrix instead of sampling.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Print the sum descriptor as JSON.
        #[arg(long)]
        describe: bool,
    },
    /// Print the inner automorphism A_j(ε) = exp(ε ad X_j).
    Inner {
        file: PathBuf,
        #[arg(long)]
        j: usize,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        #[arg(long)]
        numeric: bool,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Report<'a, W: Write> {
    out: &'a mut W,
    transpose: bool,
    failures: usize,
}

impl<W: Write> Report<'_, W> {
    fn line(&mut self, s: impl Display) -> Result<(), Failure> {
        writeln!(self.out, "{s}")?;
        Ok(())
    }

    fn check(&mut self, ok: bool, what: impl Display) -> Result<(), Failure> {
        if !ok {
            self.failures += 1;
        }
        self.line(format!("{} {what}", if ok { "PASS" } else { "FAIL" }))
    }

    fn matrix<T: Scalar>(&mut self, m: &Matrix<T>) -> Result<(), Failure> {
        let m = if self.transpose { m.transpose() } else { m.clone() };
        self.line(format_matrix(&m))
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<LieAlgebra, Failure> {
    io::algebra_from_json(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn basis_line(name: &str, s: &Subspace) -> String {
    let vecs: Vec<String> = s.basis_vectors().iter().map(|v| lieaut::subspace::format_vector(v)).collect();
    format!("{name} (dim {}): {}", s.dim(), vecs.join(" "))
}

/// Runs the command line `args` (including the program name), writing the
/// report to `out`, and returns the exit code.
pub fn run<I, T, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    let mut report = Report {
        out,
        transpose: cli.transpose,
        failures: 0,
    };
    match dispatch(cli.command, &mut report) {
        Ok(()) if report.failures == 0 => 0,
        Ok(()) => 1,
        Err(Failure::Check(msg)) => {
            let _ = writeln!(report.out, "FAIL {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(report.out, "error: {msg}");
            2
        }
    }
}

fn dispatch<W: Write>(cmd: Command, rep: &mut Report<'_, W>) -> Result<(), Failure> {
    match cmd {
        Command::Validate { file } => validate(&load_algebra(&file)?, rep),
        Command::Invariants { file } => invariants(&load_algebra(&file)?, rep),
        Command::Decompose {
            file,
            seed,
            budget,
            json,
        } => decompose_cmd(&load_algebra(&file)?, seed, budget, json, rep),
        Command::AutCheck {
            file,
            matrix,
            numeric,
            tol,
        } => {
            let alg = load_algebra(&file)?;
            let text = read(&matrix)?;
            if numeric {
                aut_check(&alg, &io::parse_matrix::<f64>(&text)?, Tolerance(tol), rep)
            } else {
                aut_check(&alg, &io::parse_matrix::<Rational>(&text)?, Tolerance(tol), rep)
            }
        }
        Command::AutSample {
            file,
            catalog: name,
            params,
            seed,
            count,
            numeric,
        } => {
            let (alg, desc) = match (file, name) {
                (Some(f), None) => io::described_algebra_from_json(&read(&f)?)?,
                (None, Some(n)) => {
                    let entry = catalog::catalog().lookup(&n)?;
                    let p = io::parse_params(&params)?;
                    (entry.instantiate(&p)?, entry.descriptor(&p)?)
                }
                _ => return Err(Failure::Usage("give a descriptor file or --catalog NAME".into())),
            };
            if numeric {
                aut_sample::<f64, W>(&alg, &desc, seed, count, rep)
            } else {
                aut_sample::<Rational, W>(&alg, &desc, seed, count, rep)
            }
        }
        Command::CatalogList => {
            for (name, note) in catalog::list_entries() {
                if note.is_empty() {
                    rep.line(name)?;
                } else {
                    rep.line(format!("{name}\t{note}"))?;
                }
            }
            Ok(())
        }
        Command::CatalogVerify { samples, seed } => {
            let report = catalog::verify_catalog(samples, seed);
            for l in &report.lines {
                rep.check(l.passed, l.to_string().split_once(' ').map_or("", |x| x.1))?;
            }
            rep.line(format!(
                "{} checks, {} failed",
                report.lines.len(),
                report.failures().count()
            ))
        }
        Command::Sum { files, out } => {
            let parts = files.iter().map(|f| load_algebra(f)).collect::<Result<Vec<_>, _>>()?;
            let s = direct_sum(&parts);
            std::fs::write(&out, io::algebra_to_json(&s.total) + "\n")?;
            for (k, p) in s.parts.iter().enumerate() {
                let b = s.block(k);
                rep.line(format!(
                    "component {}: {} -> X_{}..X_{}",
                    k + 1,
                    p.label().unwrap_or("algebra"),
                    b.start + 1,
                    b.end
                ))?;
            }
            rep.line(format!("wrote {} (dim {})", out.display(), s.total.dim()))
        }
        Command::SumAut {
            file,
            components,
            matrix,
            seed,
            count,
            describe,
        } => {
            let alg = load_algebra(&file)?;
            let desc = sum_setup(&alg, &components)?;
            if describe {
                rep.line(io::sum_descriptor_to_json(&desc))?;
            }
            match matrix {
                Some(m) => sum_verify(&alg, &desc, &io::parse_matrix(&read(&m)?)?, rep),
                None => sum_sample(&alg, &desc, seed, count, rep),
            }
        }
        Command::Inner { file, j, eps, numeric } => {
            let alg = load_algebra(&file)?;
            if j == 0 || j > alg.dim() {
                return Err(Error::IndexOutOfRange { index: j, dim: alg.dim() }.into());
            }
            let e = lieaut::scalar::parse_rational(&eps).map_err(Failure::Usage)?;
            let exact = !numeric && alg.ad_matrix(j - 1)?.is_nilpotent();
            if exact {
                let m = inner_one_param(&alg, j - 1, &e)?;
                rep.matrix(&m)?;
                rep.check(lieaut::automorphisms::is_automorphism(&alg, &m)?, "automorphism (exact)")
            } else {
                let m = inner_one_param(&alg, j - 1, &f64::from_rational(&e))?;
                rep.matrix(&m)?;
                let holds = automorphism_report(&alg, &m, Tolerance::default())?.holds;
                rep.check(holds, "automorphism (numeric)")
            }
        }
    }
}

fn validate<W: Write>(alg: &LieAlgebra, rep: &mut Report<'_, W>) -> Result<(), Failure> {
    rep.line(format!("dim {}", alg.dim()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let n = alg.dim();
    let mut antisym = true;
    for _ in 0..100 {
        let x: Vec<Rational> = (0..n).map(|_| Rational::from_integer(rng.gen_range(-5..=5).into())).collect();
        let y: Vec<Rational> = (0..n).map(|_| Rational::from_integer(rng.gen_range(-5..=5).into())).collect();
        let xy = alg.bracket(&x, &y)?;
        let yx = alg.bracket(&y, &x)?;
        antisym &= xy.iter().zip(&yx).all(|(a, b)| *a == -b.clone());
    }
    rep.check(antisym, "antisymmetry")?;
    let violations = alg.check_jacobi();
    for v in &violations {
        let (i, j, k) = v.triple;
        rep.check(
            false,
            format!(
                "jacobi ({},{},{}) residual {}",
                i + 1,
                j + 1,
                k + 1,
                lieaut::subspace::format_vector(&v.residual)
            ),
        )?;
    }
    if violations.is_empty() {
        rep.check(true, "jacobi")?;
    }
    Ok(())
}

fn invariants<W: Write>(alg: &LieAlgebra, rep: &mut Report<'_, W>) -> Result<(), Failure> {
    rep.line(format!("dim {}", alg.dim()))?;
    rep.line(basis_line("centre", &alg.center()))?;
    rep.line(basis_line("derived", &alg.derived_subalgebra()))?;
    let dims = |s: Vec<Subspace>| s.iter().map(|x| x.dim().to_string()).collect::<Vec<_>>().join(" ");
    rep.line(format!("derived series dims: {}", dims(alg.derived_series())))?;
    rep.line(format!("lower central series dims: {}", dims(alg.lower_central_series())))?;
    rep.line(format!("upper central series dims: {}", dims(alg.upper_central_series())))?;
    rep.line(format!("nilpotent: {}", alg.is_nilpotent()))?;
    rep.line(format!("solvable: {}", alg.is_solvable()))?;
    rep.line("killing form:")?;
    rep.line(format_matrix(&alg.killing_form()))
}

fn decompose_cmd<W: Write>(
    alg: &LieAlgebra,
    seed: u64,
    budget: usize,
    json: bool,
    rep: &mut Report<'_, W>,
) -> Result<(), Failure> {
    let dec = decompose(alg, seed, budget)?;
    if json {
        rep.line(io::decomposition_to_json(&dec))?;
    } else {
        for (k, (c, p)) in dec.components.iter().zip(&dec.projections).enumerate() {
            let tag = if dec.central[k] { " central" } else { "" };
            rep.line(basis_line(&format!("component {}{tag}", k + 1), c))?;
            rep.line(format!("projection {}:", k + 1))?;
            rep.matrix(p)?;
        }
    }
    rep.check(dec.projections_consistent(), format!("projections (dims {:?})", dec.dims()))
}

fn aut_check<T: Scalar, W: Write>(
    alg: &LieAlgebra,
    b: &Matrix<T>,
    tol: Tolerance,
    rep: &mut Report<'_, W>,
) -> Result<(), Failure> {
    let r = automorphism_report(alg, b, tol)?;
    rep.check(r.nonsingular, format!("nonsingular (det {})", r.det))?;
    for (i, j, n) in &r.violations {
        rep.check(false, format!("equation ({i},{j},{n})"))?;
    }
    rep.check(r.holds, format!("automorphism (worst residual {})", r.worst_residual))?;
    if r.nonsingular {
        let nc = necessary_conditions(alg, b, tol)?;
        for j in &nc.trace_failures {
            rep.check(false, format!("trace condition j={j}"))?;
        }
        for (a, c) in &nc.killing_failures {
            rep.check(false, format!("killing condition ({a},{c})"))?;
        }
        rep.check(nc.passes(), "necessary conditions")?;
    }
    Ok(())
}

fn aut_sample<T: Scalar, W: Write>(
    alg: &LieAlgebra,
    desc: &AutDescriptor,
    seed: u64,
    count: usize,
    rep: &mut Report<'_, W>,
) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let choice = sample_choice::<T>(alg, desc, &mut rng)?;
        let b = lieaut::automorphisms::reconstruct(alg, desc, &choice)?;
        rep.line(format!("sample {}:", k + 1))?;
        rep.matrix(&b)?;
        let holds = automorphism_report(alg, &b, Tolerance::default())?.holds;
        rep.check(holds, format!("sample {} automorphism", k + 1))?;
    }
    Ok(())
}

fn component_source(spec: &str) -> Result<(LieAlgebra, AutDescriptor), Failure> {
    if Path::new(spec).is_file() {
        return Ok(io::described_algebra_from_json(&read(Path::new(spec))?)?);
    }
    let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
    let entry = catalog::catalog().lookup(name)?;
    let p: Env = io::parse_params(params)?;
    Ok((entry.instantiate(&p)?, entry.descriptor(&p)?))
}

fn sum_setup(alg: &LieAlgebra, components: &[String]) -> Result<SumAutDescriptor, Failure> {
    let (parts, descs): (Vec<_>, Vec<_>) = components
        .iter()
        .map(|c| component_source(c))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .unzip();
    let s = direct_sum(&parts);
    if s.total.tensor() != alg.tensor() {
        return Err(Failure::Usage("components do not sum to the given algebra".into()));
    }
    Ok(sum_descriptor(&s, &descs, &[])?)
}

fn sum_sample<W: Write>(
    alg: &LieAlgebra,
    desc: &SumAutDescriptor,
    seed: u64,
    count: usize,
    rep: &mut Report<'_, W>,
) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = desc.sum.len();
    rep.line(format!("zeta space dim {}", desc.zeta.dim()))?;
    for k in 0..count {
        let mut permutation: Vec<usize> = (0..r).collect();
        for class in &desc.classes {
            let mut targets = class.clone();
            targets.shuffle(&mut rng);
            for (i, t) in class.iter().zip(targets) {
                permutation[*i] = t;
            }
        }
        let mut attempt = 0;
        let b = loop {
            let components = desc
                .sum
                .parts
                .iter()
                .zip(&desc.parts)
                .map(|(p, d)| sample_choice::<Rational>(p, d, &mut rng))
                .collect::<Result<Vec<ReconstructionChoice<Rational>>, _>>()?;
            let zeta_coeffs = (0..desc.zeta.dim())
                .map(|_| Rational::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=3).into()))
                .collect();
            let choice = SumChoice {
                components,
                permutation: permutation.clone(),
                zeta_coeffs,
            };
            match synthesize(desc, &choice) {
                Err(Error::SingularResult) if attempt < 50 => attempt += 1,
                other => break other?,
            }
        };
        let perm: Vec<String> = permutation.iter().map(|p| (p + 1).to_string()).collect();
        rep.line(format!("sample {} (permutation {}):", k + 1, perm.join(",")))?;
        rep.matrix(&b)?;
        rep.check(
            lieaut::automorphisms::is_automorphism(alg, &b)?,
            format!("sample {} automorphism", k + 1),
        )?;
    }
    Ok(())
}

fn sum_verify<W: Write>(
    alg: &LieAlgebra,
    desc: &SumAutDescriptor,
    b: &QMatrix,
    rep: &mut Report<'_, W>,
) -> Result<(), Failure> {
    rep.check(lieaut::automorphisms::is_automorphism(alg, b)?, "automorphism")?;
    let dec = desc.sum.decomposition()?;
    match theta_zeta_split(alg, &dec, b)? {
        None => Err(Failure::Check("no component permutation carries B".into())),
        Some(tz) => {
            let perm: Vec<String> = tz.permutation.iter().map(|p| (p + 1).to_string()).collect();
            rep.line(format!("permutation {}", perm.join(",")))?;
            rep.line("theta:")?;
            rep.matrix(&tz.theta)?;
            rep.line("zeta:")?;
            rep.matrix(&tz.zeta)?;
            rep.check(tz.theta_is_automorphism, "theta automorphism")?;
            rep.check(tz.zeta_is_central, "zeta central")
        }
    }
}
