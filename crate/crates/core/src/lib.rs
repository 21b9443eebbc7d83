//! Lie algebras given by structure constants: exact invariants, automorphism
//! verification and reconstruction, direct-sum decomposition, and a catalog of
//! low-dimensional automorphism groups.
//!
//! Matrices act on row vectors. Row `i` of an automorphism matrix `B` holds
//! the coordinates of the image of `X_i`, so the map "apply `B`, then `C`"
//! has matrix `B·C`.

pub mod algebra;
pub mod catalog;
pub mod automorphisms;
pub mod decomposition;
pub mod direct_sum;
pub mod error;
pub mod expr;
pub mod io;
pub mod matrix;
pub mod scalar;
pub mod subspace;

pub use algebra::{LieAlgebra, StructureTensor};
pub use error::{Error, LinalgError, ParseError, Result};
pub use matrix::{FMatrix, Matrix, QMatrix};
pub use scalar::{Rational, Scalar, Tolerance, DEFAULT_TOLERANCE};
pub use subspace::Subspace;

/// Single-precision matrix.
pub type F32Matrix = Matrix<f32>;
