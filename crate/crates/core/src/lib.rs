//! Exact decomposition machinery for bi-homogeneous polynomials (two-factor
//! partially symmetric tensors) with respect to Segre-Veronese varieties.
//!
//! The crate is `no_std` and only needs `alloc`. Everything rank- or
//! span-related runs over exact rationals; the only floating point code is the
//! complex root finder in [`algebra::roots`], used as an explicit fallback.
//!
//! Module map:
//! - [`algebra`]: rationals, dense exact matrices, univariate polynomials.
//! - [`forms`]: bi-forms, the Segre-Veronese lift, binary forms, curves.
//! - [`sylvester`]: catalecticants, border rank / rank of binary forms,
//!   explicit decompositions and sampling of the solution family.
//! - [`structure`]: defect tests, special lines, the common part `E` and the
//!   unique binary residual `Q` of two minimal decompositions.
//! - [`tangential`]: 2-jets on k-factor Segre-Veronese varieties.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod forms;
pub mod random;
pub mod structure;
pub mod sylvester;
pub mod tangential;

pub use algebra::matrix::Matrix;
pub use algebra::poly::UniPoly;
pub use algebra::rational::Rational;
pub use forms::{BiForm, BinaryForm, CurveG, FactorMap, LineEmbed, PointPair, ProjPoint, Shape};
