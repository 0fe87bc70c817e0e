use alloc::vec::Vec;

use super::{binary_tangent_form, dependency_set, tangent_form, tangential_rank, JetK, TangentError};
use crate::algebra::matrix::Matrix;
use crate::algebra::rational::Rational;
use crate::forms::{essential_subspaces, restrict_to_subspaces, BiForm, BinaryForm, PointPair, ProjPoint};
use crate::random::{self, TrialRng};
use crate::structure::falsify_smaller;
use crate::sylvester;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LowerBoundMethod {
    /// All degrees 1: the tangent vector is a matrix and rank is matrix rank.
    MatrixRank,
    /// One active factor: the rank is that of a binary form.
    Sylvester,
    /// Random candidate sets of size `rank - 1`; evidence only.
    Falsification,
}

impl LowerBoundMethod {
    pub fn name(self) -> &'static str {
        match self {
            LowerBoundMethod::MatrixRank => "matrix-rank",
            LowerBoundMethod::Sylvester => "sylvester",
            LowerBoundMethod::Falsification => "falsification",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBound {
    pub method: LowerBoundMethod,
    /// The claimed rank of the tangent vector.
    pub rank: usize,
    /// A proven lower bound: the flattening rank, or the exact rank for the
    /// matrix and single-factor cases.
    pub certified: usize,
    pub trials: usize,
    /// Candidate sets of size `rank - 1` whose span contained the vector.
    pub hits: usize,
    /// Rank of the binary tangent form on the jet curve.
    pub curve_rank: Option<usize>,
}

impl LowerBound {
    /// Exact certificate for the first two methods; for falsification, no
    /// hits and a curve rank equal to the claim.
    pub fn holds(&self) -> bool {
        match self.method {
            LowerBoundMethod::MatrixRank | LowerBoundMethod::Sylvester => self.certified == self.rank,
            LowerBoundMethod::Falsification => {
                self.hits == 0 && self.curve_rank == Some(self.rank) && self.certified <= self.rank
            }
        }
    }
}

/// Rank of the `(factor-1 monomials) x (factor-2 monomials)` coefficient
/// matrix: a lower bound for the rank of `p`, and equal to it for bidegree
/// `(1,1)`.
pub fn flattening_rank(p: &BiForm) -> usize {
    let shape = p.shape();
    Matrix::from_vec(shape.factor_dim(0), shape.factor_dim(1), p.to_dense()).rank()
}

/// Evidence for the lower bound of the rank of a two-factor tangent
/// vector; see [`LowerBoundMethod`].
pub fn lower_bound(j: &JetK, trials: usize, seed: u64) -> Result<LowerBound, TangentError> {
    let shape = j.shape()?;
    let active = dependency_set(j);
    if active.is_empty() {
        return Err(TangentError::Degenerate);
    }
    let rank = tangential_rank(j).rank;
    let p = tangent_form(j)?;
    let flat = flattening_rank(&p);
    let curve_rank = Some(sylvester::invariants(&binary_tangent_form(j)?)?.rank);
    let mut out = LowerBound {
        method: LowerBoundMethod::Falsification,
        rank,
        certified: flat,
        trials: 0,
        hits: 0,
        curve_rank,
    };
    if shape.d1 == 1 && shape.d2 == 1 {
        out.method = LowerBoundMethod::MatrixRank;
        return Ok(out);
    }
    if active.len() == 1 {
        let (w1, w2) = essential_subspaces(&p)?;
        let (f, _, _) = restrict_to_subspaces(&p, &w1, &w2)?;
        out.method = LowerBoundMethod::Sylvester;
        let dense = f.to_dense();
        // A one-dimensional essential subspace in the active factor: `p` is
        // a single product of powers.
        out.certified = if dense.len() == 1 { 1 } else { sylvester::invariants(&BinaryForm::new(dense)?)?.rank };
        return Ok(out);
    }
    let mut rng = random::trial_rng(seed, 0);
    let pool = candidate_pool(j, 4 * rank, &mut rng)?;
    out.trials = trials;
    out.hits = falsify_smaller(&p, rank - 1, trials, &pool, &mut rng, random::DEFAULT_COORD_BOUND)?;
    Ok(out)
}

/// Points on the jet curve and on the lines `L x [v2]`, `[v1] x R`, where
/// smaller decompositions would most plausibly live.
fn candidate_pool(j: &JetK, count: usize, rng: &mut TrialRng) -> Result<Vec<PointPair>, TangentError> {
    let (v, w) = (j.base(), j.dir());
    let mut pool = Vec::with_capacity(count);
    while pool.len() < count {
        let s = random::small_int(rng, 6);
        let t = random::nonzero_int(rng, 6);
        let at = |i: usize| -> Vec<Rational> { v[i].iter().zip(&w[i]).map(|(a, b)| a * &s + b * &t).collect() };
        let (x, y) = match pool.len() % 3 {
            0 => (at(0), at(1)),
            1 => (at(0), v[1].clone()),
            _ => (v[0].clone(), at(1)),
        };
        if let (Ok(p1), Ok(p2)) = (ProjPoint::new(x), ProjPoint::new(y)) {
            pool.push(PointPair { p1, p2 });
        }
    }
    Ok(pool)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificates_by_case() {
        let j = JetK::from_ints(&[1, 1], &[&[1, 0, 2], &[1, 2]], &[&[0, 1, 1], &[1, 1]]).unwrap();
        let lb = lower_bound(&j, 10, 1).unwrap();
        assert_eq!((lb.method, lb.certified, lb.rank), (LowerBoundMethod::MatrixRank, 2, 2));
        let j = JetK::from_ints(&[3, 2], &[&[1, 2], &[1, 0, 1]], &[&[0, 1], &[2, 0, 2]]).unwrap();
        let lb = lower_bound(&j, 10, 1).unwrap();
        assert_eq!((lb.method, lb.certified), (LowerBoundMethod::Sylvester, 3));
        assert!(lb.holds());
        let j = JetK::from_ints(&[4, 1], &[&[7, -2], &[-7, 8]], &[&[42, -12], &[-10, -6]]).unwrap();
        let lb = lower_bound(&j, 10, 1).unwrap();
        assert_eq!((lb.method, lb.certified, lb.rank), (LowerBoundMethod::Sylvester, 1, 1));
        let j = JetK::from_ints(&[2, 2], &[&[1, 1], &[1, 0]], &[&[1, -1], &[1, 3]]).unwrap();
        let lb = lower_bound(&j, 50, 1).unwrap();
        assert_eq!(lb.method, LowerBoundMethod::Falsification);
        assert_eq!((lb.hits, lb.curve_rank), (0, Some(4)));
        assert!(lb.holds());
    }
}
