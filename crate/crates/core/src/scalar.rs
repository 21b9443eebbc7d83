//! Scalar field abstraction.
//!
//! Everything in this crate is generic over [`Scalar`]. Exact rationals
//! ([`Rational`]) are the default; `f64`/`f32` appear only when a
//! transcendental matrix exponential is required. Exact scalars compare by
//! value, floats compare against a tolerance passed in explicitly.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, Num, Signed, ToPrimitive, Zero};

use crate::error::LinalgError;
use crate::matrix::Matrix;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Default tolerance for every floating-point comparison in the crate.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Absolute tolerance used when comparing float scalars against zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance(pub f64);

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(DEFAULT_TOLERANCE)
    }
}

/// A field element usable as a matrix entry.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// `true` for exact arithmetic; exact scalars ignore tolerances.
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// Absolute value as an `f64`, used for pivot selection and reporting.
    fn magnitude(&self) -> f64;

    /// Zero test: exact for rationals, `|x| <= tol` for floats.
    fn is_negligible(&self, tol: Tolerance) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol.0
        }
    }

    /// Matrix exponential in this scalar's arithmetic.
    ///
    /// Exact scalars only exponentiate nilpotent matrices (finite series);
    /// floating scalars use scaling and squaring.
    fn matrix_exp(m: &Matrix<Self>) -> Result<Matrix<Self>, LinalgError>;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn matrix_exp(m: &Matrix<Self>) -> Result<Matrix<Self>, LinalgError> {
        m.exp_nilpotent()
    }
}

macro_rules! float_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_rational(q: &Rational) -> Self {
                q.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn magnitude(&self) -> f64 {
                Float::abs(*self) as f64
            }

            fn matrix_exp(m: &Matrix<Self>) -> Result<Matrix<Self>, LinalgError> {
                m.expm()
            }
        }
    )*};
}

float_scalar!(f64, f32);

/// Parses `"p/q"`, `"p"`, or a decimal such as `"-0.125"` or `"1.5e-3"`,
/// with optional surrounding spaces. Decimals convert exactly.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || format!("invalid rational {s:?}");
    let parse_int = |x: &str| BigInt::from_str(x.trim()).map_err(|_| bad());
    if let Some((n, d)) = t.split_once('/') {
        let d = parse_int(d)?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(parse_int(n)?, d));
    }
    if !t.contains(['.', 'e', 'E']) {
        return Ok(Rational::from_integer(parse_int(&t)?));
    }
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t.as_str(), 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if !frac_part.chars().all(|c| c.is_ascii_digit())
        || !int_part.trim_start_matches(['-', '+']).chars().all(|c| c.is_ascii_digit())
        || (int_part.trim_start_matches(['-', '+']).is_empty() && frac_part.is_empty())
    {
        return Err(bad());
    }
    let negative = int_part.starts_with('-');
    let digits = format!("{}{frac_part}", int_part.trim_start_matches(['-', '+']));
    let mut q = Rational::from_integer(BigInt::from_str(&digits).map_err(|_| bad())?);
    let shift = exp - frac_part.len() as i32;
    let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), shift.unsigned_abs() as usize));
    if shift >= 0 {
        q *= scale;
    } else {
        q /= scale;
    }
    Ok(if negative { -q } else { q })
}

/// Integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` as a rational. Panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
