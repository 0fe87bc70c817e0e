//! Dense univariate polynomials with rational coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};
use super::roots;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
}

/// Coefficients in ascending degree; trailing zeros are trimmed, so the
/// leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![Rational::one()] }
    }

    /// `x - root`
    pub fn linear(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rational::int(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let v = &rem[k + j] - &c * dc;
                rem[k + j] = v;
            }
            quot[k] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// True iff `gcd(p, p')` is constant.
    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative()).degree() == Some(0))
    }

    /// Yun's decomposition: monic squarefree, pairwise coprime factors with
    /// multiplicities, whose product is the monic part of `self`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, usize)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let f = self.monic();
        let df = f.derivative();
        let c = f.gcd(&df);
        let mut w = f.div_rem(&c).0;
        let mut y = df.div_rem(&c).0;
        let mut z = y.sub(&w.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let g = w.gcd(&z);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            w = w.div_rem(&g).0;
            y = z.div_rem(&g).0;
            z = y.sub(&w.derivative());
            i += 1;
        }
        Ok(out)
    }

    /// Scales to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive_part(&self) -> Vec<BigInt> {
        let mut ints = rational::primitive_integer(&self.coeffs);
        if ints.last().is_some_and(|l| l.is_negative()) {
            for x in &mut ints {
                *x = -x.clone();
            }
        }
        ints
    }

    /// Exact rational roots with multiplicities, in increasing order.
    /// Irrational and complex roots are omitted; callers compare the total
    /// multiplicity against the degree to detect them.
    pub fn rational_roots(&self) -> Result<Vec<(Rational, usize)>, PolyError> {
        let mut out = Vec::new();
        for (factor, mult) in self.squarefree_decomposition()? {
            let mut f = factor;
            if f.coeff(0).is_zero() {
                out.push((Rational::zero(), mult));
                f = f.div_rem(&UniPoly::new(vec![Rational::zero(), Rational::one()])).0;
            }
            for r in squarefree_rational_roots(&f) {
                out.push((r, mult));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }
}

/// Rational roots of a squarefree polynomial with nonzero constant term.
///
/// Any rational root `p/q` in lowest terms has `q | lead` and `p | constant`.
/// Candidates are the continued-fraction convergents of the numerically
/// located real roots; each is confirmed by exact evaluation.
fn squarefree_rational_roots(f: &UniPoly) -> Vec<Rational> {
    let deg = f.degree().unwrap_or(0);
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        return vec![-f.coeff(0) / f.coeff(1)];
    }
    let ints = f.primitive_part();
    let lead = ints[deg].abs();
    let constant = ints[0].abs();
    let Ok(approx) = roots::squarefree_complex_roots(f) else {
        return Vec::new();
    };
    let mut found: Vec<Rational> = Vec::new();
    for z in approx {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        for cand in convergents(z.re, &lead) {
            // an exact root near a different approximation belongs to that one
            if (rational::to_f64(&cand) - z.re).abs() > 1e-6 * (1.0 + z.re.abs()) {
                continue;
            }
            if !lead.is_multiple_of(cand.denom()) {
                continue;
            }
            if !cand.numer().is_zero() && !constant.is_multiple_of(&cand.numer().abs()) {
                continue;
            }
            if found.contains(&cand) {
                continue;
            }
            if f.eval(&cand).is_zero() {
                found.push(cand);
                break;
            }
        }
    }
    found
}

fn convergents(x: f64, max_den: &BigInt) -> Vec<Rational> {
    use num_traits::{FromPrimitive, ToPrimitive};
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = x;
    for _ in 0..64 {
        // snap to the next integer when rounding noise put `rest` just below it
        let mut a_f = libm_floor(rest);
        if rest - a_f > 1.0 - 1e-9 {
            a_f += 1.0;
        }
        let Some(a) = BigInt::from_f64(a_f) else { break };
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > max_den {
            break;
        }
        out.push(Rational::new(h2.clone(), k2.clone()));
        let approx = h2.to_f64().unwrap_or(f64::NAN) / k2.to_f64().unwrap_or(f64::NAN);
        if (approx - x).abs() <= f64::EPSILON * x.abs().max(1.0) {
            break;
        }
        let frac = rest - a_f;
        if frac.abs() < 1e-9 {
            break;
        }
        rest = 1.0 / frac;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    out
}

fn libm_floor(x: f64) -> f64 {
    num_traits::Float::floor(x)
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})x", c)?,
                _ => write!(f, "({})x^{}", c, i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    #[test]
    fn root_with_noisy_partial_quotient() {
        // 1 / (4/3 - 1) evaluates to just under 3 in floating point
        let p = UniPoly::linear(&frac(4, 3)).mul(&UniPoly::linear(&int(1)));
        assert_eq!(p.rational_roots().unwrap(), vec![(int(1), 1), (frac(4, 3), 1)]);
    }

    #[test]
    fn squarefree_examples() {
        assert!(UniPoly::from_ints(&[-1, 0, 1]).is_squarefree().unwrap());
        assert!(!UniPoly::from_ints(&[1, -2, 1]).is_squarefree().unwrap());
        assert!(UniPoly::from_ints(&[0, -1, 0, 1]).is_squarefree().unwrap());
        assert_eq!(UniPoly::zero().is_squarefree(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn rational_root_examples() {
        let r = UniPoly::from_ints(&[2, -3, 1]).rational_roots().unwrap();
        assert_eq!(r, [(int(1), 1), (int(2), 1)]);
        assert!(UniPoly::from_ints(&[1, 0, 1]).rational_roots().unwrap().is_empty());
        let r = UniPoly::from_ints(&[1, -5, 6]).rational_roots().unwrap();
        assert_eq!(r, [(frac(1, 3), 1), (frac(1, 2), 1)]);
    }

    #[test]
    fn multiplicities_and_zero_root() {
        // x^2 (x - 3)^3 (x^2 - 2)
        let p = UniPoly::new(vec![Rational::zero(), Rational::zero(), Rational::one()])
            .mul(&UniPoly::linear(&int(3)).pow(3))
            .mul(&UniPoly::from_ints(&[-2, 0, 1]));
        let r = p.rational_roots().unwrap();
        assert_eq!(r, [(int(0), 2), (int(3), 3)]);
    }

    #[test]
    fn yun_decomposition_reconstructs() {
        let p = UniPoly::linear(&int(1))
            .pow(2)
            .mul(&UniPoly::linear(&frac(-1, 2)).pow(3))
            .mul(&UniPoly::from_ints(&[1, 0, 1]));
        let parts = p.squarefree_decomposition().unwrap();
        let rebuilt = parts.iter().fold(UniPoly::one(), |acc, (f, m)| acc.mul(&f.pow(*m)));
        assert_eq!(rebuilt, p.monic());
        let mults: Vec<usize> = parts.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, [1, 2, 3]);
    }

    #[test]
    fn division_identity() {
        let a = UniPoly::from_ints(&[3, 0, -2, 5, 1]);
        let b = UniPoly::from_ints(&[1, 2, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}
