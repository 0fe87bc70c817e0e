//! Border rank, rank and explicit decompositions of binary forms.
//!
//! For `q` of degree `d` with divided coefficients `a_i = c_i / C(d, i)`, the
//! catalecticant `Cat_k` is the `(d-k+1) x (k+1)` Hankel matrix
//! `(a_{i+j})`. A kernel vector `(k_0, ..., k_m)` is read as the apolar form
//! `sum k_i s^(m-i) t^i`; its root `(x:y)` is the decomposition point whose
//! pure power is `(x s + y t)^d`.
//!
//! The border rank `b` is the first `k` with a nontrivial kernel. The rank is
//! `b` when that kernel is spanned by a squarefree form (or has dimension at
//! least two) and `d + 2 - b` otherwise.

mod numeric;
mod sample;

pub use numeric::{analyze_numeric, NumericResult, NumericTerm};
pub use sample::{sample_solutions, sample_solutions_from};

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::algebra::matrix::{self, Matrix};
use crate::algebra::poly::UniPoly;
use crate::algebra::rational::{self, Rational};
use crate::forms::{BinaryForm, ProjPoint};

/// Weighted points of `P^1`; the form is `sum w (x s + y t)^d`.
pub type BinaryWitness = Vec<(Rational, ProjPoint)>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SylvesterError {
    #[error("the zero form has no decomposition")]
    ZeroForm,
    #[error("catalecticant index {k} out of range 1..={d}")]
    IndexOutOfRange { k: usize, d: usize },
    #[error(
        "no decomposition with rational points found (border rank {border_rank}, rank {rank}); \
         try the numeric backend"
    )]
    DoesNotSplit { border_rank: usize, rank: usize },
    #[error("sampling needs rank > border rank, got rank {rank} = border rank {border_rank}")]
    UniqueDecomposition { border_rank: usize, rank: usize },
    #[error("starting witness is not a decomposition of the form with {rank} points")]
    BadStart { rank: usize },
    #[error("found only {found} of {requested} decompositions with rational points")]
    Exhausted { found: usize, requested: usize },
    #[error("numeric root finding failed: {0}")]
    Numeric(alloc::string::String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SylvesterResult {
    pub degree: usize,
    pub border_rank: usize,
    pub rank: usize,
    /// Generator of `ker Cat_b` as a binary form of degree `b`.
    pub kernel_vector: Vec<Rational>,
    /// `kernel_vector` dehomogenized at `t = 1`: coefficient of `x^m` is
    /// `kernel_vector[b - m]`.
    pub kernel_form: UniPoly,
    /// Dimension of `ker Cat_b`.
    pub kernel_dim: usize,
    pub witness: Option<BinaryWitness>,
}

pub fn catalecticant(q: &BinaryForm, k: usize) -> Result<Matrix, SylvesterError> {
    let d = q.degree();
    if k == 0 || k > d {
        return Err(SylvesterError::IndexOutOfRange { k, d });
    }
    let a = divided_coeffs(q);
    let rows = d - k + 1;
    let mut m = Matrix::zeros(rows, k + 1);
    for j in 0..rows {
        for i in 0..=k {
            m[(j, i)] = a[i + j].clone();
        }
    }
    Ok(m)
}

fn divided_coeffs(q: &BinaryForm) -> Vec<Rational> {
    let d = q.degree();
    q.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c / Rational::from_integer(rational::binomial(d, i)))
        .collect()
}

/// Border rank and rank without searching for a witness.
pub fn invariants(q: &BinaryForm) -> Result<SylvesterResult, SylvesterError> {
    if q.is_zero() {
        return Err(SylvesterError::ZeroForm);
    }
    let d = q.degree();
    for k in 1..=d {
        let kernel = catalecticant(q, k)?.kernel_basis();
        if kernel.is_empty() {
            continue;
        }
        let g = kernel[0].clone();
        let rank = if kernel.len() >= 2 || binary_squarefree(&g) { k } else { d + 2 - k };
        return Ok(SylvesterResult {
            degree: d,
            border_rank: k,
            rank,
            kernel_form: dehomogenize(&g),
            kernel_vector: g,
            kernel_dim: kernel.len(),
            witness: None,
        });
    }
    unreachable!("Cat_d has a kernel for every form of degree d >= 1")
}

/// `(border rank, rank)`.
pub fn border_and_rank(q: &BinaryForm) -> Result<(usize, usize), SylvesterError> {
    let r = invariants(q)?;
    Ok((r.border_rank, r.rank))
}

/// Border rank, rank and a rank-many decomposition with rational points.
///
/// When the rank exceeds the border rank the decompositions form a positive
/// dimensional family; one is found by planting roots in `ker Cat_r`, which
/// always succeeds for border rank 2 and is a bounded search otherwise.
pub fn analyze(q: &BinaryForm) -> Result<SylvesterResult, SylvesterError> {
    let mut res = invariants(q)?;
    let (b, r) = (res.border_rank, res.rank);
    let points = if r == b && res.kernel_dim == 1 {
        binary_roots(&res.kernel_vector, &[])
    } else {
        sample::find_first(q, r)
    };
    let points = points.ok_or(SylvesterError::DoesNotSplit { border_rank: b, rank: r })?;
    let witness = attach_weights(q, &points).ok_or(SylvesterError::DoesNotSplit { border_rank: b, rank: r })?;
    res.witness = Some(witness);
    Ok(res)
}

/// Weights `w` with `sum w_i pure_power(p_i) = q`, if they exist.
pub fn attach_weights(q: &BinaryForm, points: &[ProjPoint]) -> Option<BinaryWitness> {
    let d = q.degree();
    let columns: Vec<Vec<Rational>> =
        points.iter().map(|p| BinaryForm::pure_power(p.coords(), d).coeffs().to_vec()).collect();
    let w = matrix::coordinates(d + 1, &columns, q.coeffs())?;
    let witness: BinaryWitness = w.into_iter().zip(points.iter().cloned()).collect();
    (BinaryForm::combine(d, &witness) == *q).then_some(witness)
}

/// Whether `witness` has `rank` distinct points with nonzero weights and
/// recombines to `q` exactly.
pub fn is_witness(q: &BinaryForm, witness: &[(Rational, ProjPoint)], rank: usize) -> bool {
    if witness.len() != rank || witness.iter().any(|(w, _)| w.is_zero()) {
        return false;
    }
    let mut pts: Vec<&ProjPoint> = witness.iter().map(|(_, p)| p).collect();
    pts.sort();
    pts.dedup();
    pts.len() == rank && BinaryForm::combine(q.degree(), witness) == *q
}

/// `g(x, 1)` for `g = sum k_i s^(m-i) t^i`.
pub(crate) fn dehomogenize(g: &[Rational]) -> UniPoly {
    UniPoly::new(g.iter().rev().cloned().collect())
}

/// A binary form is squarefree iff its dehomogenization is and the root at
/// infinity (degree deficit) is at most simple.
pub(crate) fn binary_squarefree(g: &[Rational]) -> bool {
    let m = g.len() - 1;
    let f = dehomogenize(g);
    let Some(deg) = f.degree() else { return false };
    m - deg <= 1 && (deg == 0 || f.is_squarefree().unwrap_or(false))
}

/// All roots of the binary form `g` as points of `P^1`, provided they are
/// rational and simple. `known` lists finite roots already known to divide
/// `g`; only the cofactor is searched.
pub(crate) fn binary_roots(g: &[Rational], known: &[Rational]) -> Option<Vec<ProjPoint>> {
    let m = g.len() - 1;
    let f = dehomogenize(g);
    let deg = f.degree()?;
    if m - deg > 1 {
        return None;
    }
    let mut points: Vec<Rational> = known.to_vec();
    let mut cof = f;
    for x in known {
        let (quo, rem) = cof.div_rem(&UniPoly::linear(x));
        if !rem.is_zero() {
            return None;
        }
        cof = quo;
    }
    match cof.degree()? {
        0 => {}
        1 => points.push(-cof.coeff(0) / cof.coeff(1)),
        2 => {
            let (c, b, a) = (cof.coeff(0), cof.coeff(1), cof.coeff(2));
            let disc = &b * &b - rational::int(4) * &a * &c;
            let root = rational_sqrt(&disc)?;
            let two_a = rational::int(2) * &a;
            points.push((-&b + &root) / &two_a);
            points.push((-&b - &root) / &two_a);
        }
        n => {
            let roots = cof.rational_roots().ok()?;
            if roots.len() != n || roots.iter().any(|(_, k)| *k != 1) {
                return None;
            }
            points.extend(roots.into_iter().map(|(x, _)| x));
        }
    }
    let mut out: Vec<ProjPoint> =
        points.into_iter().map(|x| ProjPoint::new(vec![x, Rational::one()]).expect("nonzero")).collect();
    if m > deg {
        out.push(ProjPoint::basis(1, 0));
    }
    let mut sorted = out.clone();
    sorted.sort();
    sorted.dedup();
    (sorted.len() == m).then_some(out)
}

/// Exact square root of a nonnegative rational square.
pub(crate) fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}
