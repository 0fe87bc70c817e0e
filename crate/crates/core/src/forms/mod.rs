//! Bi-forms, the Segre-Veronese lift, binary forms and the curves that
//! connect them.
//!
//! Coefficients are plain monomial coefficients of the expanded polynomial:
//! the lift of `(p1, p2)` is the coefficient vector of
//! `(sum p1_j x_j)^d1 * (sum p2_j y_j)^d2`, multinomials included.

mod biform;
mod binary;
mod concision;
mod curve;
mod point;
mod shape;

pub use biform::{combine, evaluate, evaluate_at, lift, lift_coords, rank1, BiForm};
pub(crate) use biform::power_coeffs;
pub use binary::{BinaryForm, Mobius};
pub use concision::{essential_subspaces, restrict_to_subspaces};
pub use curve::{
    coords_on_curve_span, coords_on_line_span, curve_span_vector, line_span_vector,
    restrict_to_curve, CurveG, FactorMap, LineEmbed, LineKind,
};
pub use point::{PointPair, ProjPoint};
pub use shape::{monomials, multinomial, Shape};

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero coordinate vector is not a projective point")]
    ZeroPoint,
    #[error("shape mismatch between operands")]
    ShapeMismatch,
    #[error("exponent {0:?} has the wrong length or weight")]
    BadExponent(alloc::vec::Vec<usize>),
    #[error("line points are projectively dependent")]
    DependentLine,
    #[error("vector is not in the span of the line slice")]
    NotInSpan,
    #[error("the zero form is not allowed here")]
    ZeroForm,
    #[error("curve is incompatible with the form: {0}")]
    BadCurve(String),
}
