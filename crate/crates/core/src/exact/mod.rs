//! Exact scalars, sparse polynomials and exact linear algebra.

pub mod field;
pub mod interpolate;
pub mod matrix;
pub mod poly;
pub mod sampling;

pub use field::{rat, ratio, Field, FieldKind, FieldScalar, PrimeField, QuadraticExtension, Rational, Rationals};
pub use interpolate::interpolate_vanishing;
pub use matrix::{kernel_basis, ExactMatrix, Matrix};
pub use poly::{monomials_of_degree, poly_eval, CompiledPoly, Monomial, MultiPoly};
