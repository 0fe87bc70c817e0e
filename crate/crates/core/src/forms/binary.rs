use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{FormError, ProjPoint};
use crate::algebra::rational::{self, Rational};

/// A binary form of degree `d`; `coeffs[i]` multiplies `s^(d-i) t^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self, FormError> {
        if coeffs.len() < 2 {
            return Err(FormError::InvalidShape(alloc::format!(
                "binary form needs degree >= 1, got {} coefficients",
                coeffs.len()
            )));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self, FormError> {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn zero(d: usize) -> Self {
        BinaryForm { coeffs: vec![Rational::zero(); d + 1] }
    }

    /// `s^(d-k) t^k`.
    pub fn monomial(d: usize, k: usize) -> Self {
        let mut f = Self::zero(d);
        f.coeffs[k] = Rational::one();
        f
    }

    /// `(a s + b t)^d` for the point `(a:b)`.
    pub fn pure_power(point: &[Rational], d: usize) -> Self {
        BinaryForm { coeffs: linear_power(&point[0], &point[1], d) }
    }

    /// `sum w_i (a_i s + b_i t)^d`.
    pub fn combine(d: usize, terms: &[(Rational, ProjPoint)]) -> Self {
        let mut out = Self::zero(d);
        for (w, p) in terms {
            out = out.add(&Self::pure_power(p.coords(), d).scale(w));
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        rational::is_zero_vec(&self.coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "binary form degrees differ");
        BinaryForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        BinaryForm { coeffs: poly_mul(&self.coeffs, &other.coeffs) }
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        let d = self.degree();
        let mut total = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                total += c * rational::pow(s, (d - i) as u32) * rational::pow(t, i as u32);
            }
        }
        total
    }

    /// The form `q(a s + b t, c s + d t)` for `m = [[a, b], [c, d]]`.
    pub fn substitute(&self, m: &Mobius) -> Self {
        let d = self.degree();
        let [[a, b], [c, e]] = &m.0;
        let s_img = linear_powers(a, b, d);
        let t_img = linear_powers(c, e, d);
        let mut out = vec![Rational::zero(); d + 1];
        for (i, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let prod = poly_mul(&s_img[d - i], &t_img[i]);
            for (o, p) in out.iter_mut().zip(prod) {
                *o += coeff * p;
            }
        }
        BinaryForm { coeffs: out }
    }
}

impl core::fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("BinaryForm[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&rational::format(c))?;
        }
        f.write_str("]")
    }
}

/// An invertible linear substitution of the binary variables,
/// `s -> a s + b t`, `t -> c s + d t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mobius(pub [[Rational; 2]; 2]);

impl Mobius {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Option<Self> {
        if (&a * &d - &b * &c).is_zero() {
            return None;
        }
        Some(Mobius([[a, b], [c, d]]))
    }

    pub fn det(&self) -> Rational {
        let [[a, b], [c, d]] = &self.0;
        a * d - b * c
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        let [[a, b], [c, d]] = &self.0;
        Mobius([[d / &det, -b / &det], [-c / &det, a / &det]])
    }

    /// Image of the point `(x:y)` such that
    /// `pure_power(p).substitute(m) == pure_power(m.apply_point(p))`.
    pub fn apply_point(&self, p: &[Rational]) -> Vec<Rational> {
        let [[a, b], [c, d]] = &self.0;
        vec![&p[0] * a + &p[1] * c, &p[0] * b + &p[1] * d]
    }
}

/// Coefficients of `(a s + b t)^d` in the `s^(d-i) t^i` basis.
pub(crate) fn linear_power(a: &Rational, b: &Rational, d: usize) -> Vec<Rational> {
    (0..=d)
        .map(|i| {
            Rational::from_integer(rational::binomial(d, i))
                * rational::pow(a, (d - i) as u32)
                * rational::pow(b, i as u32)
        })
        .collect()
}

/// `[(a s + b t)^k for k in 0..=d]`.
pub(crate) fn linear_powers(a: &Rational, b: &Rational, d: usize) -> Vec<Vec<Rational>> {
    let lin = vec![a.clone(), b.clone()];
    let mut out = vec![vec![Rational::one()]];
    for k in 1..=d {
        let next = poly_mul(&out[k - 1], &lin);
        out.push(next);
    }
    out
}

/// Product of binary forms given by coefficient lists in the `t`-power basis.
pub(crate) fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
