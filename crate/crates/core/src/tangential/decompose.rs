use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{
    binary_tangent_form, curve_through_jet, dependency_set, eval_tangent, in_span, tangent_form, tangential_rank,
    JetK, TangentError,
};
use crate::algebra::rational::{self, Rational};
use crate::forms::{combine, BiForm, BinaryForm, CurveG, FactorMap, LineEmbed, PointPair, ProjPoint};
use crate::random;
use crate::sylvester::{self, BinaryWitness};

/// Seed of the evaluation check used for jets with more than two factors.
const VERIFY_SEED: u64 = 0x7a6e;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecompositionKind {
    /// All terms on the jet curve, which has at least two moving factors.
    SmoothCurve,
    /// Two summands on the lines `L x [v2]` and `[v1] x R`.
    ReducibleLR,
    /// One active factor: the curve is a line.
    SingleFactor,
}

impl DecompositionKind {
    pub fn name(self) -> &'static str {
        match self {
            DecompositionKind::SmoothCurve => "smooth-curve",
            DecompositionKind::ReducibleLR => "reducible-LR",
            DecompositionKind::SingleFactor => "single-factor",
        }
    }
}

/// Weighted k-tuples of points whose lifts sum to the tangent vector.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentDecomposition {
    pub kind: DecompositionKind,
    pub degrees: Vec<usize>,
    pub terms: Vec<(Rational, Vec<ProjPoint>)>,
    /// The curves carrying the terms: one for the jet curve, two (the left
    /// and right line) for the reducible case.
    pub curves: Vec<CurveG>,
}

impl TangentDecomposition {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Two-factor terms as point pairs.
    pub fn point_pairs(&self) -> Option<Vec<(Rational, PointPair)>> {
        (self.degrees.len() == 2).then(|| {
            self.terms
                .iter()
                .map(|(w, p)| (w.clone(), PointPair { p1: p[0].clone(), p2: p[1].clone() }))
                .collect()
        })
    }

    /// Recombined form, for two factors.
    pub fn to_biform(&self, j: &JetK) -> Result<BiForm, TangentError> {
        let shape = j.shape()?;
        let terms = self.point_pairs().ok_or(TangentError::NotTwoFactor(self.degrees.len()))?;
        Ok(combine(&shape, &terms)?)
    }

    /// `sum w prod_i <P_i, x_i>^d_i`.
    pub fn eval(&self, x: &[Vec<Rational>]) -> Rational {
        self.terms
            .iter()
            .map(|(w, pts)| {
                pts.iter()
                    .zip(x)
                    .zip(&self.degrees)
                    .fold(w.clone(), |acc, ((p, xi), &d)| acc * rational::pow(&rational::dot(p.coords(), xi), d as u32))
            })
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// Decomposes the tangent vector along the jet curve: Sylvester on the
/// binary tangent form, witness parameters mapped back to curve points.
pub fn tangential_decompose(j: &JetK) -> Result<TangentDecomposition, TangentError> {
    let g = curve_through_jet(j)?;
    let q = binary_tangent_form(j)?;
    let terms = curve_terms(j, &g, &q)?;
    let kind = if dependency_set(j).len() == 1 { DecompositionKind::SingleFactor } else { DecompositionKind::SmoothCurve };
    let dec = TangentDecomposition { kind, degrees: j.degrees.clone(), terms, curves: vec![g] };
    verify(j, &dec)?;
    Ok(dec)
}

/// For a two-factor jet with both factors active: `d1` points on
/// `L x [v2]` (L the line through `v1, w1`) for the first summand of the
/// tangent vector and `d2` points on `[v1] x R` for the second.
pub fn reducible_decompose(j: &JetK) -> Result<TangentDecomposition, TangentError> {
    j.shape()?;
    match dependency_set(j).len() {
        0 => return Err(TangentError::Degenerate),
        1 => return Err(TangentError::SingleFactor),
        _ => {}
    }
    let mut terms = Vec::new();
    let mut curves = Vec::new();
    for i in 0..2 {
        let line = FactorMap::Line(LineEmbed::new(j.base[i].clone(), j.dir[i].clone())?);
        let fixed = FactorMap::Constant(j.base[1 - i].clone());
        let g = CurveG::new(if i == 0 { vec![line, fixed] } else { vec![fixed, line] })?;
        // d s^(d-1) t
        let d = j.degrees[i];
        let q = BinaryForm::monomial(d, 1).scale(&rational::int(d as i64));
        terms.extend(curve_terms(j, &g, &q)?);
        curves.push(g);
    }
    let dec = TangentDecomposition { kind: DecompositionKind::ReducibleLR, degrees: j.degrees.clone(), terms, curves };
    verify(j, &dec)?;
    Ok(dec)
}

/// Sylvester decomposition of `q`, each parameter `(a:b)` sent to the curve
/// point `g(a, b)` with the weight rescaled for the canonical
/// representatives.
fn curve_terms(j: &JetK, g: &CurveG, q: &BinaryForm) -> Result<Vec<(Rational, Vec<ProjPoint>)>, TangentError> {
    let res = sylvester::analyze(q)?;
    if res.rank != q.degree() {
        return Err(TangentError::Verification(format!(
            "binary tangent form of degree {} has rank {}",
            q.degree(),
            res.rank
        )));
    }
    let witness: BinaryWitness = res.witness.expect("analyze returns a witness");
    witness
        .into_iter()
        .map(|(w, t)| {
            let raw = g.point(&t.coords()[0], &t.coords()[1]);
            let mut weight = w;
            let mut pts = Vec::with_capacity(raw.len());
            for (x, &d) in raw.into_iter().zip(&j.degrees) {
                let lead = x.iter().find(|c| !c.is_zero()).cloned().ok_or(crate::forms::FormError::ZeroPoint)?;
                weight *= rational::pow(&lead, d as u32);
                pts.push(ProjPoint::new(x)?);
            }
            Ok((weight, pts))
        })
        .collect()
}

/// Term count, base point exclusion, concision, and recombination (exact
/// for two factors, by evaluation at random tuples otherwise).
fn verify(j: &JetK, dec: &TangentDecomposition) -> Result<(), TangentError> {
    let rank = tangential_rank(j).rank;
    if dec.len() != rank {
        return Err(TangentError::Verification(format!("{} terms for rank {rank}", dec.len())));
    }
    let base: Vec<ProjPoint> = j.base.iter().map(|v| ProjPoint::new(v.clone())).collect::<Result<_, _>>()?;
    let active = dependency_set(j);
    for (w, pts) in &dec.terms {
        if w.is_zero() {
            return Err(TangentError::Verification("zero weight".into()));
        }
        if *pts == base {
            return Err(TangentError::Verification("base point among the terms".into()));
        }
        for (i, p) in pts.iter().enumerate() {
            let ok = if active.contains(&i) { in_span(&j.base[i], &j.dir[i], p.coords()) } else { *p == base[i] };
            if !ok {
                return Err(TangentError::Verification(format!("factor {} point off the jet line", i + 1)));
            }
        }
    }
    if j.k() == 2 {
        if dec.to_biform(j)? != tangent_form(j)? {
            return Err(TangentError::Verification("recombined form differs".into()));
        }
        return Ok(());
    }
    let ambient: usize = j
        .base
        .iter()
        .zip(&j.degrees)
        .map(|(v, &d)| usize::try_from(rational::binomial(v.len() - 1 + d, d)).unwrap_or(usize::MAX))
        .fold(1usize, |a, b| a.saturating_mul(b));
    let mut rng = random::trial_rng(VERIFY_SEED, 0);
    for _ in 0..ambient.saturating_add(rank) {
        let x: Vec<Vec<Rational>> =
            j.base.iter().map(|v| random::small_vector(&mut rng, v.len(), random::DEFAULT_COORD_BOUND)).collect();
        if dec.eval(&x) != eval_tangent(j, &x)? {
            return Err(TangentError::Verification("evaluation mismatch".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bilinear_jet() {
        let j = JetK::from_ints(&[1, 1], &[&[1, 0], &[1, 2]], &[&[1, 1], &[0, 1]]).unwrap();
        let dec = tangential_decompose(&j).unwrap();
        assert_eq!(dec.kind, DecompositionKind::SmoothCurve);
        assert_eq!(dec.len(), 2);
        let red = reducible_decompose(&j).unwrap();
        assert_eq!(red.len(), 2);
        assert_eq!(red.to_biform(&j).unwrap(), dec.to_biform(&j).unwrap());
    }

    #[test]
    fn planted_21_jet() {
        let j = JetK::from_ints(&[2, 1], &[&[1, -1, 2], &[3, 1]], &[&[0, 2, 1], &[1, -2]]).unwrap();
        let dec = tangential_decompose(&j).unwrap();
        assert_eq!(dec.len(), 3);
        assert_eq!(dec.to_biform(&j).unwrap(), tangent_form(&j).unwrap());
    }

    #[test]
    fn single_factor_jet() {
        let j = JetK::from_ints(&[4, 2], &[&[1, 2], &[1, 0, 1]], &[&[0, 1], &[2, 0, 2]]).unwrap();
        let dec = tangential_decompose(&j).unwrap();
        assert_eq!(dec.kind, DecompositionKind::SingleFactor);
        assert_eq!(dec.len(), 4);
        let v2 = ProjPoint::from_ints(&[1, 0, 1]).unwrap();
        assert!(dec.terms.iter().all(|(_, p)| p[1] == v2));
        assert_eq!(reducible_decompose(&j), Err(TangentError::SingleFactor));
    }

    #[test]
    fn reducible_counts() {
        let j = JetK::from_ints(&[2, 2], &[&[1, 1], &[2, 1, 0]], &[&[1, -1], &[0, 1, 1]]).unwrap();
        let red = reducible_decompose(&j).unwrap();
        let v1 = ProjPoint::from_ints(&[1, 1]).unwrap();
        let v2 = ProjPoint::from_ints(&[2, 1, 0]).unwrap();
        assert_eq!(red.terms.iter().filter(|(_, p)| p[1] == v2).count(), 2);
        assert_eq!(red.terms.iter().filter(|(_, p)| p[0] == v1).count(), 2);
        assert_eq!(red.to_biform(&j).unwrap(), tangent_form(&j).unwrap());
    }

    #[test]
    fn three_factor_jet_by_evaluation() {
        let j = JetK::from_ints(&[2, 1, 2], &[&[1, 0], &[1, 1], &[0, 1]], &[&[1, 1], &[2, 2], &[1, 3]]).unwrap();
        let dec = tangential_decompose(&j).unwrap();
        assert_eq!(dec.len(), 4);
        let v2 = ProjPoint::from_ints(&[1, 1]).unwrap();
        assert!(dec.terms.iter().all(|(_, p)| p[1] == v2));
        let j = JetK::from_ints(&[1, 2, 1], &[&[1, 0], &[1, 1, 0], &[2, 1]], &[&[0, 1], &[0, 1, 1], &[1, 1]]).unwrap();
        assert_eq!(tangential_decompose(&j).unwrap().len(), 4);
    }

    #[test]
    fn degenerate_rejected() {
        let j = JetK::from_ints(&[2, 1], &[&[1, 0], &[1, 1]], &[&[2, 0], &[1, 1]]).unwrap();
        assert_eq!(tangential_decompose(&j), Err(TangentError::Degenerate));
        assert_eq!(reducible_decompose(&j), Err(TangentError::Degenerate));
    }
}
