//! Exact scalars, dense matrices and univariate polynomials.

pub mod matrix;
pub mod poly;
pub mod rational;
pub mod roots;

pub use matrix::{kernel_basis, rank, span_intersect, span_contains, Matrix};
pub use poly::UniPoly;
pub use rational::Rational;
