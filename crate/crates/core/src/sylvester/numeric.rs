use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use super::sample::squarefree_element;
use super::{dehomogenize, invariants, SylvesterError};
use crate::algebra::rational::{self, Rational};
use crate::algebra::roots;
use crate::forms::BinaryForm;

#[derive(Debug, Clone, PartialEq)]
pub struct NumericTerm {
    pub weight: Complex64,
    /// `(x:y)` with pure power `(x s + y t)^d`.
    pub point: [Complex64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericResult {
    pub degree: usize,
    pub border_rank: usize,
    pub rank: usize,
    pub terms: Vec<NumericTerm>,
    /// `|A w - q| / |q|` for the least squares weights.
    pub residual: f64,
}

/// Rank and border rank exactly, decomposition points as floating point
/// complex numbers. Used when the points are irrational.
pub fn analyze_numeric(q: &BinaryForm, tol: f64) -> Result<NumericResult, SylvesterError> {
    let inv = invariants(q)?;
    let g = squarefree_element(q, &inv).ok_or(SylvesterError::DoesNotSplit {
        border_rank: inv.border_rank,
        rank: inv.rank,
    })?;
    let f = dehomogenize(&g);
    let found = roots::numeric_roots(&f, tol).map_err(|e| SylvesterError::Numeric(format!("{e}")))?;
    let one = Complex64::new(1.0, 0.0);
    let mut points: Vec<[Complex64; 2]> = Vec::new();
    for r in &found {
        if r.multiplicity != 1 {
            return Err(SylvesterError::Numeric(format!("repeated root near {}", r.value)));
        }
        points.push([r.value, one]);
    }
    if points.len() < inv.rank {
        points.push([one, Complex64::zero()]);
    }
    let d = q.degree();
    let columns: Vec<Vec<Complex64>> = points
        .iter()
        .map(|[x, y]| {
            (0..=d)
                .map(|i| {
                    let c = rational::to_f64(&Rational::from_integer(rational::binomial(d, i)));
                    x.powu((d - i) as u32) * y.powu(i as u32) * c
                })
                .collect()
        })
        .collect();
    let rhs: Vec<Complex64> = q.coeffs().iter().map(|c| Complex64::new(rational::to_f64(c), 0.0)).collect();
    let weights = least_squares(&columns, &rhs)
        .ok_or_else(|| SylvesterError::Numeric(format!("singular system for {} points", points.len())))?;
    let mut resid = rhs.clone();
    for (w, col) in weights.iter().zip(&columns) {
        for (r, c) in resid.iter_mut().zip(col) {
            *r -= w * c;
        }
    }
    let residual = norm(&resid) / norm(&rhs).max(f64::MIN_POSITIVE);
    Ok(NumericResult {
        degree: d,
        border_rank: inv.border_rank,
        rank: inv.rank,
        terms: weights.into_iter().zip(points).map(|(weight, point)| NumericTerm { weight, point }).collect(),
        residual,
    })
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Least squares via modified Gram-Schmidt on the columns.
fn least_squares(columns: &[Vec<Complex64>], rhs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = columns.len();
    let mut q: Vec<Vec<Complex64>> = columns.to_vec();
    let mut r = vec![vec![Complex64::zero(); n]; n];
    for j in 0..n {
        for i in 0..j {
            let dot: Complex64 = q[i].iter().zip(&q[j]).map(|(a, b)| a.conj() * b).sum();
            r[i][j] = dot;
            let qi = q[i].clone();
            for (x, y) in q[j].iter_mut().zip(&qi) {
                *x -= dot * y;
            }
        }
        let nrm = norm(&q[j]);
        if nrm < 1e-300 {
            return None;
        }
        r[j][j] = Complex64::new(nrm, 0.0);
        for x in &mut q[j] {
            *x /= nrm;
        }
    }
    let qtb: Vec<Complex64> = q.iter().map(|qi| qi.iter().zip(rhs).map(|(a, b)| a.conj() * b).sum()).collect();
    let mut x = vec![Complex64::zero(); n];
    for i in (0..n).rev() {
        let mut acc = qtb[i];
        for k in i + 1..n {
            acc -= r[i][k] * x[k];
        }
        x[i] = acc / r[i][i];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_of_conjugate_cubes() {
        let q = BinaryForm::from_ints(&[2, 0, -6, 0]).unwrap();
        let res = analyze_numeric(&q, 1e-9).unwrap();
        assert_eq!((res.border_rank, res.rank), (2, 2));
        assert_eq!(res.terms.len(), 2);
        assert!(res.residual < 1e-9);
    }

    #[test]
    fn tangent_form_numeric() {
        let q = BinaryForm::monomial(5, 1);
        let res = analyze_numeric(&q, 1e-9).unwrap();
        assert_eq!((res.border_rank, res.rank), (2, 5));
        assert_eq!(res.terms.len(), 5);
        assert!(res.residual < 1e-8, "residual {}", res.residual);
    }
}
