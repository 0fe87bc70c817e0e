use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{BiForm, FormError, Shape};
use crate::algebra::matrix::Matrix;
use crate::algebra::rational::{self, Rational};

/// Basis vectors of a linear subspace.
pub type Subspace = Vec<Vec<Rational>>;

/// Smallest subspaces `W1`, `W2` (as bases of linear-form coefficient
/// vectors, in reduced row echelon form) with `f` in `S^d1 W1 x S^d2 W2`.
///
/// `W1` is spanned by the linear forms obtained from `f` by all derivatives
/// of order `d1 - 1` in `x` and `d2` in `y`; symmetrically for `W2`.
pub fn essential_subspaces(f: &BiForm) -> Result<(Subspace, Subspace), FormError> {
    if f.is_zero() {
        return Err(FormError::ZeroForm);
    }
    Ok((contraction_span(f, 0), contraction_span(f, 1)))
}

fn contraction_span(f: &BiForm, factor: usize) -> Vec<Vec<Rational>> {
    let shape = f.shape();
    let vars = shape.factor(factor).0 + 1;
    let mut rows: BTreeMap<(Vec<usize>, Vec<usize>), Vec<Rational>> = BTreeMap::new();
    for (e1, e2, c) in f.terms() {
        let (moving, other) = if factor == 0 { (e1, e2) } else { (e2, e1) };
        let weight = moving
            .iter()
            .fold(Rational::from_integer(1.into()), |acc, &k| acc * Rational::from_integer(rational::factorial(k)));
        for j in 0..vars {
            if moving[j] == 0 {
                continue;
            }
            let mut alpha = moving.to_vec();
            alpha[j] -= 1;
            let row = rows.entry((alpha, other.to_vec())).or_insert_with(|| vec![Rational::zero(); vars]);
            row[j] += c * &weight;
        }
    }
    let rows: Vec<Vec<Rational>> = rows.into_values().collect();
    Matrix::from_rows(vars, &rows).row_space_basis()
}

/// `f` rewritten in coordinates of the subspaces `w1`, `w2` (each given by
/// any spanning set containing `f`'s essential subspace). Returns the new
/// form together with the pivot coordinates of each factor: a point of `W_i`
/// has coordinates `x[pivots_i]` in the new variables.
pub fn restrict_to_subspaces(
    f: &BiForm,
    w1: &[Vec<Rational>],
    w2: &[Vec<Rational>],
) -> Result<(BiForm, Vec<usize>, Vec<usize>), FormError> {
    let shape = f.shape();
    let (_, piv1) = Matrix::from_rows(shape.n1 + 1, w1).rref();
    let (_, piv2) = Matrix::from_rows(shape.n2 + 1, w2).rref();
    if piv1.is_empty() || piv2.is_empty() {
        return Err(FormError::ZeroForm);
    }
    let new_shape = Shape::new(piv1.len() - 1, piv2.len() - 1, shape.d1, shape.d2)?;
    let keep = |e: &[usize], piv: &[usize]| -> Option<Vec<usize>> {
        let kept: Vec<usize> = piv.iter().map(|&j| e[j]).collect();
        (kept.iter().sum::<usize>() == e.iter().sum::<usize>()).then_some(kept)
    };
    let mut terms = Vec::new();
    for (e1, e2, c) in f.terms() {
        if let (Some(a), Some(b)) = (keep(e1, &piv1), keep(e2, &piv2)) {
            terms.push((a, b, c.clone()));
        }
    }
    Ok((BiForm::from_terms(new_shape, terms)?, piv1, piv2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::{rank, span_contains};
    use crate::algebra::rational::int;
    use crate::forms::{combine, PointPair};

    #[test]
    fn pure_monomial() {
        let s = Shape::new(2, 2, 3, 2).unwrap();
        let f = combine(&s, &[(int(1), PointPair::from_ints(&[1, 0, 0], &[1, 0, 0]).unwrap())]).unwrap();
        let (w1, w2) = essential_subspaces(&f).unwrap();
        assert_eq!(w1, vec![vec![int(1), int(0), int(0)]]);
        assert_eq!(w2, vec![vec![int(1), int(0), int(0)]]);
        assert_eq!(essential_subspaces(&BiForm::zero(s)), Err(FormError::ZeroForm));
    }

    #[test]
    fn planted_plane_in_second_factor() {
        let s = Shape::new(2, 3, 2, 2).unwrap();
        // second coordinates inside the plane x3 = x0 + x1 + x2
        let pts = [
            PointPair::from_ints(&[1, 2, 3], &[1, 0, 0, 1]).unwrap(),
            PointPair::from_ints(&[0, 1, 1], &[0, 1, 0, 1]).unwrap(),
            PointPair::from_ints(&[2, -1, 1], &[0, 0, 1, 1]).unwrap(),
            PointPair::from_ints(&[1, 1, -4], &[1, 2, 3, 6]).unwrap(),
        ];
        let terms: Vec<_> = pts.iter().map(|p| (int(1), p.clone())).collect();
        let f = combine(&s, &terms).unwrap();
        let (w1, w2) = essential_subspaces(&f).unwrap();
        assert_eq!(w1.len(), 3);
        assert_eq!(w2.len(), 3);
        for p in &pts {
            assert!(span_contains(4, &w2, p.p2.coords()));
        }
        let (g, piv1, piv2) = restrict_to_subspaces(&f, &w1, &w2).unwrap();
        assert_eq!(g.shape(), Shape::new(2, 2, 2, 2).unwrap());
        assert_eq!(piv1.len(), 3);
        let (v1, v2) = essential_subspaces(&g).unwrap();
        assert_eq!((v1.len(), v2.len()), (3, 3));
        let restricted: Vec<_> = pts
            .iter()
            .map(|p| {
                let a: Vec<_> = piv1.iter().map(|&j| p.p1.coords()[j].clone()).collect();
                let b: Vec<_> = piv2.iter().map(|&j| p.p2.coords()[j].clone()).collect();
                (int(1), PointPair::new(a, b).unwrap())
            })
            .collect();
        // canonical rescaling is the identity here since every pivot set starts at a nonzero coordinate
        let h = combine(&g.shape(), &restricted).unwrap();
        assert_eq!(rank(g.shape().dim(), &[g.to_dense(), h.to_dense()]), 1);
    }
}
