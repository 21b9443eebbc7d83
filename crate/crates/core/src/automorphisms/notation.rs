use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::scalar::{int, Rational};

/// `±X_index` with a 0-based index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SignedBasis {
    pub index: usize,
    pub negative: bool,
}

impl SignedBasis {
    pub fn pos(index: usize) -> Self {
        SignedBasis {
            index,
            negative: false,
        }
    }

    pub fn neg(index: usize) -> Self {
        SignedBasis {
            index,
            negative: true,
        }
    }
}

impl fmt::Display for SignedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        write!(f, "X_{}", index_label(self.index + 1))
    }
}

/// One term `c E_i^j` of a Weyl-basis combination, 0-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylTerm {
    pub i: usize,
    pub j: usize,
    pub c: Rational,
}

impl fmt::Display for WeylTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = format!(
            "E_{}^{}",
            index_label(self.i + 1),
            index_label(self.j + 1)
        );
        if self.c.is_one() {
            write!(f, "{e}")
        } else if self.c == -Rational::one() {
            write!(f, "-{e}")
        } else if self.c.is_integer() {
            write!(f, "{}{e}", self.c)
        } else {
            write!(f, "({}){e}", self.c)
        }
    }
}

pub(crate) fn index_label(i: usize) -> String {
    if i < 10 {
        i.to_string()
    } else {
        format!("{{{i}}}")
    }
}

/// `p_m`: the diagonal matrix with `-1` at the (0-based) positions in `m`.
pub fn sign_mask(m: &[usize], dim: usize) -> Result<QMatrix> {
    let mut out = QMatrix::identity(dim);
    for &i in m {
        if i >= dim {
            return Err(Error::IndexOutOfRange { index: i + 1, dim });
        }
        out.set(i, i, -out.get(i, i).clone());
    }
    Ok(out)
}

/// Matrix whose row `i` is the image `tuple[i]` of `X_i`.
pub fn signed_permutation(tuple: &[SignedBasis]) -> Result<QMatrix> {
    let n = tuple.len();
    let mut seen = vec![false; n];
    let mut out = QMatrix::zeros(n, n);
    for (row, s) in tuple.iter().enumerate() {
        if s.index >= n || seen[s.index] {
            let text: Vec<String> = tuple.iter().map(|s| s.to_string()).collect();
            return Err(Error::BadTuple(format!("({})", text.join(","))));
        }
        seen[s.index] = true;
        out.set(row, s.index, int(if s.negative { -1 } else { 1 }));
    }
    Ok(out)
}

/// `Σ c E_i^j` as a `dim x dim` matrix.
pub fn weyl_combo(terms: &[WeylTerm], dim: usize) -> Result<QMatrix> {
    let mut out = QMatrix::zeros(dim, dim);
    for t in terms {
        for idx in [t.i, t.j] {
            if idx >= dim {
                return Err(Error::IndexOutOfRange {
                    index: idx + 1,
                    dim,
                });
            }
        }
        let v = out.get(t.i, t.j).clone() + t.c.clone();
        out.set(t.i, t.j, v);
    }
    Ok(out)
}

/// `true` when every row and column has a single nonzero entry equal to ±1.
pub fn is_signed_permutation(m: &QMatrix) -> bool {
    m.is_square()
        && (0..m.nrows()).all(|i| {
            let nz: Vec<&Rational> = m.row(i).iter().filter(|x| !x.is_zero()).collect();
            nz.len() == 1 && (nz[0].is_one() || *nz[0] == -Rational::one())
        })
        && (0..m.ncols()).all(|j| m.column(j).iter().filter(|x| !x.is_zero()).count() == 1)
}
