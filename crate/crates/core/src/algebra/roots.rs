//! Floating point complex root finding, the numeric fallback backend.
//!
//! Roots of each exact squarefree factor are located with the Aberth-Ehrlich
//! iteration, so repeated roots never have to be resolved numerically: the
//! multiplicity comes from the exact squarefree decomposition.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::poly::{PolyError, UniPoly};
use super::rational;

pub const DEFAULT_TOL: f64 = 1e-9;

const MAX_ITERATIONS: usize = 500;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("root iteration did not converge (degree {degree}, worst residual {residual:e})")]
    NoConvergence { degree: usize, residual: f64 },
}

/// A located root and the multiplicity of its cluster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericRoot {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// All complex roots of `p`, clustered by single linkage at relative
/// distance `tol`, with multiplicities summing to `deg p`.
///
/// Every returned root satisfies `|f(z)| < tol * sum |f_i| |z|^i` for the
/// squarefree factor `f` it was computed from.
pub fn numeric_roots(p: &UniPoly, tol: f64) -> Result<Vec<NumericRoot>, RootError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(RootError::BadTolerance(tol));
    }
    let parts = p.squarefree_decomposition()?;
    let mut raw: Vec<(Complex64, usize)> = Vec::new();
    for (factor, mult) in parts {
        let zs = squarefree_complex_roots(&factor)?;
        let coeffs = to_complex(&factor);
        for z in zs {
            let (val, scale) = eval_with_scale(&coeffs, z);
            if val.norm() > tol * scale.max(f64::MIN_POSITIVE) {
                return Err(RootError::NoConvergence {
                    degree: factor.degree().unwrap_or(0),
                    residual: val.norm() / scale,
                });
            }
            raw.push((z, mult));
        }
    }
    Ok(cluster(raw, tol))
}

fn cluster(raw: Vec<(Complex64, usize)>, tol: f64) -> Vec<NumericRoot> {
    let n = raw.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (raw[i].0, raw[j].0);
            if (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0) {
                let (ri, rj) = (find(&mut label, i), find(&mut label, j));
                if ri != rj {
                    label[rj] = ri;
                }
            }
        }
    }
    let mut out: Vec<(usize, Complex64, usize)> = Vec::new();
    for (i, &(z, mult)) in raw.iter().enumerate().take(n) {
        let root = find(&mut label, i);
        match out.iter_mut().find(|(r, _, _)| *r == root) {
            Some((_, sum, m)) => {
                *sum += z * mult as f64;
                *m += mult;
            }
            None => out.push((root, z * mult as f64, mult)),
        }
    }
    out.into_iter()
        .map(|(_, sum, m)| NumericRoot { value: sum / m as f64, multiplicity: m })
        .collect()
}

fn to_complex(p: &UniPoly) -> Vec<Complex64> {
    p.coeffs().iter().map(|c| Complex64::new(rational::to_f64(c), 0.0)).collect()
}

fn eval_with_scale(coeffs: &[Complex64], z: Complex64) -> (Complex64, f64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut s = 0.0;
    let az = z.norm();
    for c in coeffs.iter().rev() {
        v = v * z + c;
        s = s * az + c.norm();
    }
    (v, s)
}

fn eval_and_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// Simple roots of a squarefree polynomial via Aberth-Ehrlich iteration
/// followed by Newton polishing.
pub(crate) fn squarefree_complex_roots(p: &UniPoly) -> Result<Vec<Complex64>, RootError> {
    let Some(deg) = p.degree() else {
        return Err(PolyError::ZeroPolynomial.into());
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = rational::to_f64(&p.coeff(deg));
    let coeffs: Vec<Complex64> = to_complex(p).into_iter().map(|c| c / lead).collect();
    if deg == 1 {
        return Ok(vec![-coeffs[0]]);
    }
    // Cauchy bound on root moduli.
    let bound = 1.0 + coeffs[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = bound.min(1e6) * 0.5 + 0.1;
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = 2.0 * core::f64::consts::PI * (k as f64) / (deg as f64) + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..deg {
            let (v, d) = eval_and_derivative(&coeffs, z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if i != j {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    for zi in &mut z {
        for _ in 0..3 {
            let (v, d) = eval_and_derivative(&coeffs, *zi);
            if d.norm() == 0.0 || v.norm() == 0.0 {
                break;
            }
            let next = *zi - v / d;
            if next.re.is_finite() && next.im.is_finite() {
                *zi = next;
            }
        }
    }
    if !converged {
        let worst = z
            .iter()
            .map(|&zi| {
                let (v, s) = eval_with_scale(&coeffs, zi);
                v.norm() / s
            })
            .fold(0.0, f64::max);
        if worst > 1e-12 {
            return Err(RootError::NoConvergence { degree: deg, residual: worst });
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn imaginary_pair() {
        let r = numeric_roots(&UniPoly::from_ints(&[1, 0, 1]), DEFAULT_TOL).unwrap();
        assert_eq!(r.len(), 2);
        for root in &r {
            assert_eq!(root.multiplicity, 1);
            assert!(root.value.re.abs() < 1e-9);
            assert!((root.value.im.abs() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn triple_root_clusters() {
        let p = UniPoly::linear(&int(2)).pow(3);
        let r = numeric_roots(&p, DEFAULT_TOL).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 3);
        assert!((r[0].value - Complex64::new(2.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(numeric_roots(&UniPoly::zero(), 1e-9), Err(RootError::Poly(_))));
        assert!(matches!(numeric_roots(&UniPoly::one(), 0.0), Err(RootError::BadTolerance(_))));
        assert!(numeric_roots(&UniPoly::one(), 1e-9).unwrap().is_empty());
    }
}
