//! 2-jets on k-factor Segre-Veronese varieties.
//!
//! A jet is a base point `(v_1, ..., v_k)` with directions `(w_1, ..., w_k)`.
//! Its tangent vector is the derivative at `t = 0` of the lift of
//! `(v_i + t w_i)`. Factor `i` is active when `w_i` is not proportional to
//! `v_i`; the rank of the tangent vector is the sum of the degrees of the
//! active factors, and it is realized along the curve `v_i + t w_i`.

mod bounds;
mod decompose;

pub use bounds::{flattening_rank, lower_bound, LowerBound, LowerBoundMethod};
pub use decompose::{reducible_decompose, tangential_decompose, DecompositionKind, TangentDecomposition};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::matrix;
use crate::algebra::rational::{self, Rational};
use crate::forms::{monomials, multinomial, BiForm, BinaryForm, CurveG, FactorMap, FormError, LineEmbed, Shape};
use crate::structure::StructureError;
use crate::sylvester::SylvesterError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TangentError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Sylvester(#[from] SylvesterError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("invalid jet: {0}")]
    BadJet(String),
    #[error("operation needs k = 2 factors, jet has {0}")]
    NotTwoFactor(usize),
    #[error("degenerate jet: every direction is proportional to its base point")]
    Degenerate,
    #[error("reducible decomposition needs both factors active")]
    SingleFactor,
    #[error("point tuple has wrong dimensions")]
    DimensionMismatch,
    #[error("decomposition does not reproduce the tangent vector: {0}")]
    Verification(String),
}

/// Base point and direction in each of `k` factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetK {
    degrees: Vec<usize>,
    base: Vec<Vec<Rational>>,
    dir: Vec<Vec<Rational>>,
}

impl JetK {
    pub fn new(degrees: Vec<usize>, base: Vec<Vec<Rational>>, dir: Vec<Vec<Rational>>) -> Result<Self, TangentError> {
        let k = degrees.len();
        if k == 0 {
            return Err(TangentError::BadJet("no factors".into()));
        }
        if base.len() != k || dir.len() != k {
            return Err(TangentError::BadJet(format!(
                "{k} degrees but {} base points and {} directions",
                base.len(),
                dir.len()
            )));
        }
        for i in 0..k {
            if degrees[i] == 0 {
                return Err(TangentError::BadJet(format!("degree of factor {} is zero", i + 1)));
            }
            if base[i].is_empty() || rational::is_zero_vec(&base[i]) {
                return Err(TangentError::BadJet(format!("base point of factor {} is zero", i + 1)));
            }
            if dir[i].len() != base[i].len() {
                return Err(TangentError::BadJet(format!(
                    "factor {}: base has {} coordinates, direction {}",
                    i + 1,
                    base[i].len(),
                    dir[i].len()
                )));
            }
        }
        Ok(JetK { degrees, base, dir })
    }

    pub fn from_ints(degrees: &[usize], base: &[&[i64]], dir: &[&[i64]]) -> Result<Self, TangentError> {
        let conv = |v: &[&[i64]]| v.iter().map(|c| c.iter().map(|&x| rational::int(x)).collect()).collect();
        JetK::new(degrees.to_vec(), conv(base), conv(dir))
    }

    pub fn k(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn base(&self) -> &[Vec<Rational>] {
        &self.base
    }

    pub fn dir(&self) -> &[Vec<Rational>] {
        &self.dir
    }

    /// The two-factor shape, for `k = 2`.
    pub fn shape(&self) -> Result<Shape, TangentError> {
        if self.k() != 2 {
            return Err(TangentError::NotTwoFactor(self.k()));
        }
        Ok(Shape::new(self.base[0].len() - 1, self.base[1].len() - 1, self.degrees[0], self.degrees[1])?)
    }

    /// The same jet with every direction multiplied by `l`.
    pub fn scale_dir(&self, l: &Rational) -> JetK {
        let dir = self.dir.iter().map(|w| w.iter().map(|c| c * l).collect()).collect();
        JetK { degrees: self.degrees.clone(), base: self.base.clone(), dir }
    }

    /// `c` with `w_i = c v_i`, or `None` when factor `i` is active.
    fn proportionality(&self, i: usize) -> Option<Rational> {
        let (v, w) = (&self.base[i], &self.dir[i]);
        let j = v.iter().position(|c| !c.is_zero()).expect("nonzero base");
        let c = &w[j] / &v[j];
        v.iter().zip(w).all(|(a, b)| *b == a * &c).then_some(c)
    }
}

/// Indices (0-based) of the factors whose direction is not proportional to
/// the base point.
pub fn dependency_set(j: &JetK) -> Vec<usize> {
    (0..j.k()).filter(|&i| j.proportionality(i).is_none()).collect()
}

/// Coefficients of `d (v.x)^(d-1) (w.x)` over `monomials(v.len(), d)`:
/// the derivative at `t = 0` of `((v + t w).x)^d`.
fn power_derivative(v: &[Rational], w: &[Rational], d: usize) -> Vec<Rational> {
    monomials(v.len(), d)
        .iter()
        .map(|e| {
            let mut total = Rational::zero();
            for (j, &ej) in e.iter().enumerate() {
                if ej == 0 || w[j].is_zero() {
                    continue;
                }
                let mut term = &w[j] * rational::int(ej as i64);
                for (l, &el) in e.iter().enumerate() {
                    let exp = if l == j { el - 1 } else { el };
                    if exp > 0 {
                        term *= rational::pow(&v[l], exp as u32);
                    }
                }
                total += term;
            }
            total * Rational::from_integer(multinomial(e))
        })
        .collect()
}

/// The tangent vector of a two-factor jet,
/// `d1 (v1.x)^(d1-1) (w1.x) (v2.y)^d2 + d2 (v1.x)^d1 (v2.y)^(d2-1) (w2.y)`.
pub fn tangent_form(j: &JetK) -> Result<BiForm, TangentError> {
    let shape = j.shape()?;
    let p1 = crate::forms::power_coeffs(&j.base[0], shape.d1);
    let p2 = crate::forms::power_coeffs(&j.base[1], shape.d2);
    let t1 = power_derivative(&j.base[0], &j.dir[0], shape.d1);
    let t2 = power_derivative(&j.base[1], &j.dir[1], shape.d2);
    let mut dense = Vec::with_capacity(shape.dim());
    for a in 0..p1.len() {
        for b in 0..p2.len() {
            dense.push(&t1[a] * &p2[b] + &p1[a] * &t2[b]);
        }
    }
    Ok(BiForm::from_dense(shape, &dense)?)
}

/// `sum_i d_i <v_i,x_i>^(d_i-1) <w_i,x_i> prod_{l != i} <v_l,x_l>^d_l` at
/// raw coordinates `x`.
pub fn eval_tangent(j: &JetK, x: &[Vec<Rational>]) -> Result<Rational, TangentError> {
    if x.len() != j.k() || x.iter().zip(&j.base).any(|(a, b)| a.len() != b.len()) {
        return Err(TangentError::DimensionMismatch);
    }
    let vx: Vec<Rational> = x.iter().zip(&j.base).map(|(a, v)| rational::dot(a, v)).collect();
    let wx: Vec<Rational> = x.iter().zip(&j.dir).map(|(a, w)| rational::dot(a, w)).collect();
    let mut total = Rational::zero();
    for i in 0..j.k() {
        let mut term = rational::int(j.degrees[i] as i64) * &wx[i];
        if j.degrees[i] > 1 {
            term *= rational::pow(&vx[i], (j.degrees[i] - 1) as u32);
        }
        for l in (0..j.k()).filter(|&l| l != i) {
            term *= rational::pow(&vx[l], j.degrees[l] as u32);
        }
        total += term;
    }
    Ok(total)
}

/// Rank of the tangent vector. A degenerate jet (no active factor) has
/// tangent vector `(sum d_i c_i) lift(v)` where `w_i = c_i v_i`; its rank is
/// 1, or 0 when that multiple vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TangentRank {
    pub rank: usize,
    pub degenerate: bool,
}

pub fn tangential_rank(j: &JetK) -> TangentRank {
    let active = dependency_set(j);
    if active.is_empty() {
        let scale = degenerate_scale(j);
        return TangentRank { rank: usize::from(!scale.is_zero()), degenerate: true };
    }
    TangentRank { rank: active.iter().map(|&i| j.degrees[i]).sum(), degenerate: false }
}

/// `sum d_i c_i` over the inactive factors, where `w_i = c_i v_i`.
fn degenerate_scale(j: &JetK) -> Rational {
    (0..j.k())
        .filter_map(|i| j.proportionality(i).map(|c| c * rational::int(j.degrees[i] as i64)))
        .fold(Rational::zero(), |a, b| a + b)
}

/// The curve `(s:t) -> (s v_i + t w_i)` in active factors, `v_i` in the
/// others. It passes through the base point at `(1:0)`.
pub fn curve_through_jet(j: &JetK) -> Result<CurveG, TangentError> {
    let active = dependency_set(j);
    if active.is_empty() {
        return Err(TangentError::Degenerate);
    }
    let factors = (0..j.k())
        .map(|i| {
            if active.contains(&i) {
                LineEmbed::new(j.base[i].clone(), j.dir[i].clone()).map(FactorMap::Line)
            } else {
                Ok(FactorMap::Constant(j.base[i].clone()))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CurveG::new(factors)?)
}

/// The binary form `q` of degree `D` (the sum of the active degrees) whose
/// image in the span of the lifted jet curve is the tangent vector:
/// `q = kappa s^D + D s^(D-1) t` with `kappa = sum d_i c_i` over the
/// inactive factors.
pub fn binary_tangent_form(j: &JetK) -> Result<BinaryForm, TangentError> {
    let rank = tangential_rank(j);
    if rank.degenerate {
        return Err(TangentError::Degenerate);
    }
    let d = rank.rank;
    let mut c = alloc::vec![Rational::zero(); d + 1];
    c[0] = degenerate_scale(j);
    c[1] = rational::int(d as i64);
    Ok(BinaryForm::new(c)?)
}

/// Whether `x` lies in `span{v, w}`.
pub(crate) fn in_span(v: &[Rational], w: &[Rational], x: &[Rational]) -> bool {
    matrix::span_contains(v.len(), &[v.to_vec(), w.to_vec()], x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{evaluate_at, lift_coords};
    use crate::random;
    use num_traits::One;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rational::int(x)).collect()
    }

    /// Derivative at 0 of `t -> lift(v + t w)` by exact Lagrange
    /// interpolation through `t = 0..=D`.
    fn interpolated_tangent(j: &JetK) -> Vec<Rational> {
        let shape = j.shape().unwrap();
        let d = shape.d1 + shape.d2;
        let nodes: Vec<Rational> = (0..=d as i64).map(rational::int).collect();
        let mut out = alloc::vec![Rational::zero(); shape.dim()];
        for (a, ta) in nodes.iter().enumerate() {
            // derivative at 0 of the a-th Lagrange basis polynomial
            let mut denom = Rational::one();
            for (b, tb) in nodes.iter().enumerate() {
                if b != a {
                    denom *= ta - tb;
                }
            }
            let mut weight = Rational::zero();
            for (c, _) in nodes.iter().enumerate().filter(|&(c, _)| c != a) {
                let mut prod = Rational::one();
                for (b, tb) in nodes.iter().enumerate() {
                    if b != a && b != c {
                        prod *= -tb;
                    }
                }
                weight += prod;
            }
            weight /= denom;
            let pt: Vec<Vec<Rational>> =
                (0..2).map(|i| j.base[i].iter().zip(&j.dir[i]).map(|(v, w)| v + w * ta).collect()).collect();
            for (o, c) in out.iter_mut().zip(lift_coords(&pt[0], &pt[1], &shape).unwrap()) {
                *o += c * &weight;
            }
        }
        out
    }

    #[test]
    fn dependency_examples() {
        let j = JetK::from_ints(&[1, 1], &[&[1, 0], &[1, 2]], &[&[0, 0], &[0, 0]]).unwrap();
        assert!(dependency_set(&j).is_empty());
        let j = JetK::from_ints(&[1, 1], &[&[1, 0], &[1, 2]], &[&[0, 1], &[3, 6]]).unwrap();
        assert_eq!(dependency_set(&j), [0]);
        let j = JetK::from_ints(&[1, 2, 1], &[&[1, 0], &[1, 2], &[1, 1]], &[&[0, 1], &[1, 0], &[2, -1]]).unwrap();
        assert_eq!(dependency_set(&j), [0, 1, 2]);
    }

    #[test]
    fn bad_jets_rejected() {
        assert!(JetK::from_ints(&[1, 1], &[&[0, 0], &[1, 0]], &[&[1, 0], &[0, 1]]).is_err());
        assert!(JetK::from_ints(&[1, 0], &[&[1, 0], &[1, 0]], &[&[0, 1], &[0, 1]]).is_err());
        assert!(JetK::from_ints(&[1, 1], &[&[1, 0], &[1, 0]], &[&[0, 1], &[0, 1, 0]]).is_err());
    }

    #[test]
    fn tangent_form_symbolic_example() {
        let j = JetK::from_ints(&[2, 1], &[&[1, 0], &[1, 0]], &[&[0, 1], &[0, 1]]).unwrap();
        let p = tangent_form(&j).unwrap();
        let shape = Shape::new(1, 1, 2, 1).unwrap();
        let expected = BiForm::from_terms(
            shape,
            [(alloc::vec![1, 1], alloc::vec![1, 0], rational::int(2)), (alloc::vec![2, 0], alloc::vec![0, 1], Rational::one())],
        )
        .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn tangent_form_zero_and_matrix_cases() {
        let j = JetK::from_ints(&[2, 3], &[&[1, 2], &[1, 0, 1]], &[&[0, 0], &[0, 0, 0]]).unwrap();
        assert!(tangent_form(&j).unwrap().is_zero());
        // d = (1,1): w1 v2^T + v1 w2^T
        let j = JetK::from_ints(&[1, 1], &[&[1, 2], &[3, 1, 0]], &[&[0, 1], &[1, 1, 1]]).unwrap();
        let p = tangent_form(&j).unwrap().to_dense();
        let (v1, v2, w1, w2) = (ints(&[1, 2]), ints(&[3, 1, 0]), ints(&[0, 1]), ints(&[1, 1, 1]));
        for a in 0..2 {
            for b in 0..3 {
                assert_eq!(p[a * 3 + b], &w1[a] * &v2[b] + &v1[a] * &w2[b]);
            }
        }
    }

    #[test]
    fn tangent_form_matches_interpolated_derivative() {
        let mut rng = random::trial_rng(11, 0);
        for (n1, n2, d1, d2) in [(1, 1, 2, 3), (2, 1, 3, 2), (1, 2, 1, 4)] {
            let base = alloc::vec![random::small_vector(&mut rng, n1 + 1, 5), random::small_vector(&mut rng, n2 + 1, 5)];
            let dir = alloc::vec![random::small_vector(&mut rng, n1 + 1, 5), random::small_vector(&mut rng, n2 + 1, 5)];
            let Ok(j) = JetK::new(alloc::vec![d1, d2], base, dir) else { continue };
            assert_eq!(tangent_form(&j).unwrap().to_dense(), interpolated_tangent(&j));
        }
    }

    #[test]
    fn eval_tangent_agrees_with_form() {
        let j = JetK::from_ints(&[2, 3], &[&[1, 2, 0], &[1, -1]], &[&[0, 1, 1], &[2, 1]]).unwrap();
        let p = tangent_form(&j).unwrap();
        let mut rng = random::trial_rng(5, 0);
        for _ in 0..20 {
            let x = random::small_vector(&mut rng, 3, 6);
            let y = random::small_vector(&mut rng, 2, 6);
            assert_eq!(eval_tangent(&j, &[x.clone(), y.clone()]).unwrap(), evaluate_at(&p, &x, &y).unwrap());
        }
    }

    #[test]
    fn eval_tangent_trilinear_expansion() {
        let j = JetK::from_ints(&[1, 1, 1], &[&[1, 2], &[0, 1], &[1, 1]], &[&[3, 1], &[1, 1], &[2, -1]]).unwrap();
        let x = [ints(&[2, 1]), ints(&[1, -3]), ints(&[4, 1])];
        // (w1.x1)(v2.x2)(v3.x3) + (v1.x1)(w2.x2)(v3.x3) + (v1.x1)(v2.x2)(w3.x3)
        let (v1x, v2x, v3x) = (rational::int(4), rational::int(-3), rational::int(5));
        let (w1x, w2x, w3x) = (rational::int(7), rational::int(-2), rational::int(7));
        let expected = &w1x * &v2x * &v3x + &v1x * &w2x * &v3x + &v1x * &v2x * &w3x;
        assert_eq!(eval_tangent(&j, &x).unwrap(), expected);
        // two vanishing base pairings kill every summand
        let x = [ints(&[2, -1]), ints(&[1, 0]), ints(&[1, 5])];
        assert!(eval_tangent(&j, &x).unwrap().is_zero());
    }

    #[test]
    fn rank_formula() {
        let j = JetK::from_ints(&[1, 1], &[&[1, 0], &[1, 0]], &[&[0, 1], &[0, 1]]).unwrap();
        assert_eq!(tangential_rank(&j).rank, 2);
        let p = tangent_form(&j).unwrap();
        assert_eq!(flattening_rank(&p), 2);
        let j = JetK::from_ints(&[2, 3], &[&[1, 0], &[1, 0]], &[&[0, 1], &[0, 1]]).unwrap();
        assert_eq!(tangential_rank(&j).rank, 5);
        let j = JetK::from_ints(&[2, 1, 2], &[&[1, 0], &[1, 1], &[0, 1]], &[&[1, 1], &[2, 2], &[1, 0]]).unwrap();
        assert_eq!(dependency_set(&j), [0, 2]);
        assert_eq!(tangential_rank(&j), TangentRank { rank: 4, degenerate: false });
    }

    #[test]
    fn degenerate_rank() {
        let j = JetK::from_ints(&[2, 1], &[&[1, 0], &[1, 1]], &[&[2, 0], &[1, 1]]).unwrap();
        assert_eq!(tangential_rank(&j), TangentRank { rank: 1, degenerate: true });
        // 2*2 + 1*(-4) = 0
        let j = JetK::from_ints(&[2, 1], &[&[1, 0], &[1, 1]], &[&[2, 0], &[-4, -4]]).unwrap();
        assert_eq!(tangential_rank(&j), TangentRank { rank: 0, degenerate: true });
        assert!(tangent_form(&j).unwrap().is_zero());
        assert_eq!(curve_through_jet(&j), Err(TangentError::Degenerate));
    }

    #[test]
    fn curve_shapes() {
        let j = JetK::from_ints(&[2, 1], &[&[1, 0], &[1, 1]], &[&[0, 1], &[1, 0]]).unwrap();
        let g = curve_through_jet(&j).unwrap();
        assert!(g.factors().iter().all(FactorMap::is_line));
        assert_eq!(g.point(&Rational::one(), &Rational::zero()), j.base);
        let j = JetK::from_ints(&[2, 1], &[&[1, 0], &[1, 1]], &[&[0, 1], &[2, 2]]).unwrap();
        let g = curve_through_jet(&j).unwrap();
        assert!(g.factors()[0].is_line() && !g.factors()[1].is_line());
    }

    #[test]
    fn binary_tangent_form_lifts_to_tangent_vector() {
        use crate::forms::{coords_on_curve_span, curve_span_vector};
        for (base, dir) in [
            ([&[1i64, 2][..], &[1, 0, 1][..]], [&[0i64, 1][..], &[1, 1, 0][..]]),
            ([&[1, 2][..], &[1, 0, 1][..]], [&[0, 1][..], &[3, 0, 3][..]]),
            ([&[2, 1][..], &[0, 3, 1][..]], [&[-4, -2][..], &[1, 1, 2][..]]),
        ] {
            let j = JetK::from_ints(&[2, 2], &base, &dir).unwrap();
            let shape = j.shape().unwrap();
            let g = curve_through_jet(&j).unwrap();
            let q = binary_tangent_form(&j).unwrap();
            let p = tangent_form(&j).unwrap().to_dense();
            assert_eq!(curve_span_vector(&q, &g, &shape).unwrap(), p);
            assert_eq!(coords_on_curve_span(&p, &g, &shape).unwrap(), q);
        }
    }
}
