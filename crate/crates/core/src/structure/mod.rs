//! Two minimal decompositions of the same bi-form and what they share.
//!
//! When `p` has two different minimal decompositions `S` and `A` (in the low
//! rank regime checked by [`hypotheses_hold`]), both consist of a common part
//! `E` plus points on one special line slice, and the line parts are two
//! decompositions of a single binary form `Q` living on that line.
//!
//! Also here: Hilbert-defect tests of finite point sets, which are the
//! reduced-set form of the vanishing conditions used throughout.

mod conic;
mod generate;
mod lines;
mod split;

pub use conic::{case_iii_recognizer, conic_configuration, ConicConfiguration};
pub use generate::{falsify_smaller, generate_instance, Instance, InstanceMeta};
pub use lines::{find_special_line, line_census, SpecialLine};
pub use split::{analyze_pair, extend_witness, unique_q, verify_ee7, Ee7Report, PairOutcome, SplitDecomposition};

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::matrix;
use crate::algebra::rational::Rational;
use crate::forms::{combine, lift, BiForm, FormError, PointPair, Shape};
use crate::sylvester::SylvesterError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Sylvester(#[from] SylvesterError),
    #[error("point set contains duplicate points")]
    DuplicatePoints,
    #[error("{0} is not a decomposition of the target form")]
    NotAWitness(String),
    #[error("the two decompositions are identical")]
    IdenticalWitnesses,
    #[error("decompositions have different sizes {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("no alpha- or beta-line slice carries enough points")]
    NoSpecialLine,
    #[error("off-line parts differ: {s_rest:?} vs {a_rest:?}")]
    EMismatch { s_rest: Vec<PointPair>, a_rest: Vec<PointPair> },
    #[error("expected a single point in the intersection, found dimension {0}")]
    IntersectionNotPoint(usize),
    #[error("bookkeeping fails: |E| = {e}, rank {rank}, border rank {b}, line degree {d}")]
    Bookkeeping { e: usize, rank: usize, b: usize, d: usize },
    #[error("infeasible request: {0}")]
    Infeasible(String),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error("need at least two decompositions, got {0}")]
    TooFewWitnesses(usize),
}

/// A weighted set of point pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessDecomposition {
    pub shape: Shape,
    pub terms: Vec<(Rational, PointPair)>,
}

impl WitnessDecomposition {
    /// Rejects mismatched shapes and repeated points.
    pub fn new(shape: Shape, terms: Vec<(Rational, PointPair)>) -> Result<Self, StructureError> {
        for (_, p) in &terms {
            p.check_shape(&shape)?;
        }
        let w = WitnessDecomposition { shape, terms };
        if !distinct(&w.points()) {
            return Err(StructureError::DuplicatePoints);
        }
        Ok(w)
    }

    /// Weights for `points` making them a decomposition of `p`, if any.
    pub fn fit(p: &BiForm, points: Vec<PointPair>) -> Result<Self, StructureError> {
        let shape = p.shape();
        let lifts = lifts(&points, &shape)?;
        let w = matrix::coordinates(shape.dim(), &lifts, &p.to_dense())
            .ok_or_else(|| StructureError::NotAWitness(alloc::format!("{} points", points.len())))?;
        WitnessDecomposition::new(shape, w.into_iter().zip(points).collect())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn points(&self) -> Vec<PointPair> {
        self.terms.iter().map(|(_, p)| p.clone()).collect()
    }

    pub fn sorted_points(&self) -> Vec<PointPair> {
        let mut v = self.points();
        v.sort();
        v
    }

    pub fn form(&self) -> Result<BiForm, StructureError> {
        Ok(combine(&self.shape, &self.terms)?)
    }

    /// Recombines to `p` exactly, with all weights nonzero.
    pub fn evinces(&self, p: &BiForm) -> bool {
        self.terms.iter().all(|(w, _)| !w.is_zero()) && self.form().is_ok_and(|f| f == *p)
    }
}

pub(crate) fn distinct(points: &[PointPair]) -> bool {
    let mut v = points.to_vec();
    v.sort();
    v.dedup();
    v.len() == points.len()
}

pub(crate) fn lifts(points: &[PointPair], shape: &Shape) -> Result<Vec<Vec<Rational>>, FormError> {
    points.iter().map(|p| lift(p, shape)).collect()
}

/// `|Z| - rank(lifts of Z)`; zero iff the lifts are independent.
pub fn hilbert_defect(z: &[PointPair], shape: &Shape) -> Result<usize, StructureError> {
    if !distinct(z) {
        return Err(StructureError::DuplicatePoints);
    }
    let l = lifts(z, shape)?;
    Ok(z.len() - matrix::rank(shape.dim(), &l))
}

/// Whether the lifts of `s` are linearly independent. Any set of at most
/// `1 + min(d1, d2)` distinct points passes.
pub fn check_rho_prime(shape: &Shape, s: &[PointPair]) -> bool {
    hilbert_defect(s, shape).is_ok_and(|d| d == 0)
}

/// The low rank regime: `2r <= 1 + d1 + d2` with `|d1 - d2| <= 2`, or
/// `r <= min(d1, d2)`.
pub fn hypotheses_hold(shape: &Shape, r: usize) -> bool {
    hypothesis_a(shape, r) || hypothesis_b(shape, r)
}

pub fn hypothesis_a(shape: &Shape, r: usize) -> bool {
    2 * r <= 1 + shape.d1 + shape.d2 && shape.d1.abs_diff(shape.d2) <= 2
}

pub fn hypothesis_b(shape: &Shape, r: usize) -> bool {
    r <= shape.min_degree()
}

/// `p` is not in the span of any proper subset of `w`'s points, checked by
/// enumerating all `2^r - 2` proper nonempty subsets.
pub fn is_minimal_spanning(p: &BiForm, w: &WitnessDecomposition) -> Result<bool, StructureError> {
    let r = w.len();
    assert!(r < usize::BITS as usize, "subset enumeration needs r < {}", usize::BITS);
    let shape = p.shape();
    let l = lifts(&w.points(), &shape)?;
    let target = p.to_dense();
    for mask in 1..(1usize << r) - 1 {
        let subset: Vec<Vec<Rational>> =
            (0..r).filter(|i| mask >> i & 1 == 1).map(|i| l[i].clone()).collect();
        if matrix::span_contains(shape.dim(), &subset, &target) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use alloc::vec;

    #[test]
    fn defect_of_small_sets() {
        let s = Shape::new(1, 1, 2, 2).unwrap();
        let p = PointPair::from_ints(&[1, 2], &[3, 1]).unwrap();
        assert_eq!(hilbert_defect(core::slice::from_ref(&p), &s).unwrap(), 0);
        assert_eq!(hilbert_defect(&[p.clone(), p], &s), Err(StructureError::DuplicatePoints));
        // four points on the beta-line [e0] x P^1 with d2 = 2
        let line: Vec<PointPair> = (0..4).map(|i| PointPair::from_ints(&[1, 0], &[1, i]).unwrap()).collect();
        assert_eq!(hilbert_defect(&line, &s).unwrap(), 1);
        assert!(check_rho_prime(&s, &line[..3]));
        assert!(!check_rho_prime(&s, &line));
    }

    #[test]
    fn hypotheses() {
        let s = Shape::new(1, 1, 4, 4).unwrap();
        assert!(hypothesis_a(&s, 4));
        assert!(!hypothesis_a(&s, 5));
        assert!(hypothesis_b(&s, 4));
        let s = Shape::new(2, 2, 5, 5).unwrap();
        assert!(hypotheses_hold(&s, 5));
        assert!(!hypotheses_hold(&s, 6));
    }

    #[test]
    fn exhaustive_minimality() {
        let s = Shape::new(1, 1, 2, 2).unwrap();
        let pts = vec![
            PointPair::from_ints(&[1, 0], &[1, 1]).unwrap(),
            PointPair::from_ints(&[1, 1], &[1, -1]).unwrap(),
            PointPair::from_ints(&[1, 2], &[0, 1]).unwrap(),
        ];
        let w = WitnessDecomposition::new(s, pts.iter().map(|p| (int(1), p.clone())).collect()).unwrap();
        let p = w.form().unwrap();
        assert!(w.evinces(&p));
        assert!(is_minimal_spanning(&p, &w).unwrap());
        let fitted = WitnessDecomposition::fit(&p, pts.clone()).unwrap();
        assert_eq!(fitted, w);
        let mut zero = w.clone();
        zero.terms[2].0 = int(0);
        let q = zero.form().unwrap();
        assert!(!is_minimal_spanning(&q, &zero).unwrap());
    }
}
