//! Exact arithmetic for quasi-banded operators on the Fourier lattice of the circle.
//!
//! The class contains Laurent multiplication operators, `D`, `|D|`, the spectral
//! projections `p₊`, `p₋`, `p₀`, and is closed under sums and composition. Its
//! finite-rank elements play the role of smoothing operators.

mod laurent;
mod matrix;
mod operator;
mod poly;
mod profile;
mod scalar;

pub use laurent::LaurentPoly;
pub use matrix::{rank, MatrixCoeff};
pub use operator::{FiniteSupport, LatticeOperator};
pub use poly::ModePoly;
pub use profile::DiagonalProfile;
pub use scalar::{parse_rational, rational_to_string, GaussianRational, Rational};
