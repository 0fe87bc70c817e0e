use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::FormError;
use crate::algebra::rational;

/// Projective dimensions `n1, n2` and bidegree `(d1, d2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub n1: usize,
    pub n2: usize,
    pub d1: usize,
    pub d2: usize,
}

impl Shape {
    pub fn new(n1: usize, n2: usize, d1: usize, d2: usize) -> Result<Self, FormError> {
        if d1 == 0 || d2 == 0 {
            return Err(FormError::InvalidShape(format!("degrees must be positive, got ({d1},{d2})")));
        }
        Ok(Shape { n1, n2, d1, d2 })
    }

    /// `C(n1+d1, d1) * C(n2+d2, d2)`.
    pub fn dim(&self) -> usize {
        self.factor_dim(0) * self.factor_dim(1)
    }

    /// Number of degree-`d_i` monomials in factor `i` (0 or 1).
    pub fn factor_dim(&self, i: usize) -> usize {
        let (n, d) = self.factor(i);
        usize::try_from(rational::binomial(n + d, d)).unwrap_or(usize::MAX)
    }

    /// `(n_i, d_i)` for factor `i` (0 or 1).
    pub fn factor(&self, i: usize) -> (usize, usize) {
        if i == 0 {
            (self.n1, self.d1)
        } else {
            (self.n2, self.d2)
        }
    }

    pub fn min_degree(&self) -> usize {
        self.d1.min(self.d2)
    }

    /// Monomials of the ambient space, in dense-vector order.
    pub fn monomials(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let m1 = monomials(self.n1 + 1, self.d1);
        let m2 = monomials(self.n2 + 1, self.d2);
        let mut out = Vec::with_capacity(m1.len() * m2.len());
        for a in &m1 {
            for b in &m2 {
                out.push((a.clone(), b.clone()));
            }
        }
        out
    }

    /// Lookup from monomial to dense index.
    pub fn monomial_index(&self) -> BTreeMap<(Vec<usize>, Vec<usize>), usize> {
        self.monomials().into_iter().enumerate().map(|(i, m)| (m, i)).collect()
    }
}

impl core::fmt::Display for Shape {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{},{},{},{}", self.n1, self.n2, self.d1, self.d2)
    }
}

/// Exponent vectors of length `vars` and weight `degree`, lexicographically
/// decreasing (so `x0^degree` comes first).
pub fn monomials(vars: usize, degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if vars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = vec![0; vars];
    fill(&mut current, 0, degree, &mut out);
    out
}

fn fill(current: &mut Vec<usize>, pos: usize, remaining: usize, out: &mut Vec<Vec<usize>>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// `|e|! / prod e_j!`.
pub fn multinomial(e: &[usize]) -> BigInt {
    let total: usize = e.iter().sum();
    let mut out = rational::factorial(total);
    for &k in e {
        out /= rational::factorial(k);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let s = Shape::new(1, 1, 1, 1).unwrap();
        assert_eq!(s.dim(), 4);
        let s = Shape::new(2, 3, 3, 2).unwrap();
        assert_eq!(s.dim(), 10 * 10);
        assert_eq!(s.monomials().len(), s.dim());
        assert!(Shape::new(1, 1, 0, 1).is_err());
    }

    #[test]
    fn monomial_order_and_weight() {
        let m = monomials(3, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], vec![2, 0, 0]);
        assert_eq!(m[5], vec![0, 0, 2]);
        assert!(m.iter().all(|e| e.iter().sum::<usize>() == 2));
        assert_eq!(monomials(1, 4), vec![vec![4]]);
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[2, 1]), BigInt::from(3));
        assert_eq!(multinomial(&[1, 1, 1]), BigInt::from(6));
        assert_eq!(multinomial(&[0, 0]), BigInt::from(1));
    }
}
