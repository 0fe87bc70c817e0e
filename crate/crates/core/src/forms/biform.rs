use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::point::check_len;
use super::shape::{monomials, multinomial};
use super::{FormError, PointPair, Shape};
use crate::algebra::rational::{self, Rational};

type Key = (Vec<usize>, Vec<usize>);

/// A bi-homogeneous polynomial of bidegree `(d1, d2)` in `n1+1` plus `n2+1`
/// variables. Only nonzero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BiForm {
    shape: Shape,
    coeffs: BTreeMap<Key, Rational>,
}

impl BiForm {
    pub fn zero(shape: Shape) -> Self {
        BiForm { shape, coeffs: BTreeMap::new() }
    }

    /// Builds a form from `(e1, e2, c)` triples; repeated monomials add up.
    pub fn from_terms<I>(shape: Shape, terms: I) -> Result<Self, FormError>
    where
        I: IntoIterator<Item = (Vec<usize>, Vec<usize>, Rational)>,
    {
        let mut f = BiForm::zero(shape);
        for (e1, e2, c) in terms {
            check_exponent(&e1, shape.n1 + 1, shape.d1)?;
            check_exponent(&e2, shape.n2 + 1, shape.d2)?;
            f.add_term((e1, e2), c);
        }
        Ok(f)
    }

    pub fn from_dense(shape: Shape, v: &[Rational]) -> Result<Self, FormError> {
        check_len(v.len(), shape.dim())?;
        let mut f = BiForm::zero(shape);
        for (key, c) in shape.monomials().into_iter().zip(v) {
            if !c.is_zero() {
                f.coeffs.insert(key, c.clone());
            }
        }
        Ok(f)
    }

    fn add_term(&mut self, key: Key, c: Rational) {
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(key, sum);
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero coefficients.
    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, e1: &[usize], e2: &[usize]) -> Rational {
        self.coeffs
            .get(&(e1.to_vec(), e2.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &[usize], &Rational)> {
        self.coeffs.iter().map(|((a, b), c)| (a.as_slice(), b.as_slice(), c))
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        self.shape
            .monomials()
            .into_iter()
            .map(|key| self.coeffs.get(&key).cloned().unwrap_or_else(Rational::zero))
            .collect()
    }

    pub fn add(&self, other: &BiForm) -> Result<BiForm, FormError> {
        if self.shape != other.shape {
            return Err(FormError::ShapeMismatch);
        }
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BiForm) -> Result<BiForm, FormError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> BiForm {
        if k.is_zero() {
            return BiForm::zero(self.shape);
        }
        BiForm {
            shape: self.shape,
            coeffs: self.coeffs.iter().map(|(key, c)| (key.clone(), c * k)).collect(),
        }
    }
}

impl core::fmt::Debug for BiForm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "BiForm[{}]{{", self.shape)?;
        for (i, ((a, b), c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a:?}{b:?}: {}", rational::format(c))?;
        }
        f.write_str("}")
    }
}

fn check_exponent(e: &[usize], vars: usize, degree: usize) -> Result<(), FormError> {
    if e.len() != vars || e.iter().sum::<usize>() != degree {
        return Err(FormError::BadExponent(e.to_vec()));
    }
    Ok(())
}

/// Coefficients of `(sum p_j x_j)^d` over `monomials(p.len(), d)`.
pub(crate) fn power_coeffs(p: &[Rational], d: usize) -> Vec<Rational> {
    let powers: Vec<Vec<Rational>> = p
        .iter()
        .map(|c| {
            let mut v = Vec::with_capacity(d + 1);
            let mut acc = Rational::one();
            for _ in 0..=d {
                v.push(acc.clone());
                acc *= c;
            }
            v
        })
        .collect();
    monomials(p.len(), d)
        .iter()
        .map(|e| {
            let mut c = Rational::from_integer(multinomial(e));
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    c *= &powers[j][k];
                }
            }
            c
        })
        .collect()
}

/// Lift of raw (not canonicalized) coordinates; scaling `x` by `l` and `y`
/// by `m` scales the result by `l^d1 m^d2`.
pub fn lift_coords(x: &[Rational], y: &[Rational], shape: &Shape) -> Result<Vec<Rational>, FormError> {
    check_len(x.len(), shape.n1 + 1)?;
    check_len(y.len(), shape.n2 + 1)?;
    if rational::is_zero_vec(x) || rational::is_zero_vec(y) {
        return Err(FormError::ZeroPoint);
    }
    let a = power_coeffs(x, shape.d1);
    let b = power_coeffs(y, shape.d2);
    let mut out = Vec::with_capacity(a.len() * b.len());
    for u in &a {
        for v in &b {
            out.push(u * v);
        }
    }
    Ok(out)
}

/// Dense coefficient vector of `(sum p1_j x_j)^d1 (sum p2_j y_j)^d2` for the
/// canonical representative of `pt`.
pub fn lift(pt: &PointPair, shape: &Shape) -> Result<Vec<Rational>, FormError> {
    lift_coords(pt.p1.coords(), pt.p2.coords(), shape)
}

pub fn rank1(weight: &Rational, pt: &PointPair, shape: &Shape) -> Result<BiForm, FormError> {
    let v = lift(pt, shape)?;
    let scaled: Vec<Rational> = v.into_iter().map(|c| c * weight).collect();
    BiForm::from_dense(*shape, &scaled)
}

/// `sum weight_i * lift(pt_i)` as a form.
pub fn combine(shape: &Shape, terms: &[(Rational, PointPair)]) -> Result<BiForm, FormError> {
    let mut acc = alloc::vec![Rational::zero(); shape.dim()];
    for (w, pt) in terms {
        if w.is_zero() {
            pt.check_shape(shape)?;
            continue;
        }
        for (a, c) in acc.iter_mut().zip(lift(pt, shape)?) {
            *a += c * w;
        }
    }
    BiForm::from_dense(*shape, &acc)
}

pub fn evaluate(f: &BiForm, pt: &PointPair) -> Result<Rational, FormError> {
    evaluate_at(f, pt.p1.coords(), pt.p2.coords())
}

/// `f(x, y)` at raw coordinates.
pub fn evaluate_at(f: &BiForm, x: &[Rational], y: &[Rational]) -> Result<Rational, FormError> {
    let shape = f.shape();
    check_len(x.len(), shape.n1 + 1)?;
    check_len(y.len(), shape.n2 + 1)?;
    let mut total = Rational::zero();
    for (e1, e2, c) in f.terms() {
        let mut term = c.clone();
        for (v, &k) in x.iter().zip(e1).chain(y.iter().zip(e2)) {
            if k > 0 {
                term *= rational::pow(v, k as u32);
            }
        }
        total += term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use alloc::vec;

    #[test]
    fn lift_of_basis_point() {
        let s = Shape::new(2, 1, 3, 2).unwrap();
        let v = lift(&PointPair::from_ints(&[1, 0, 0], &[1, 0]).unwrap(), &s).unwrap();
        assert_eq!(v.iter().filter(|c| !c.is_zero()).count(), 1);
        assert_eq!(v[0], int(1));
    }

    #[test]
    fn lift_of_small_product() {
        let s = Shape::new(1, 1, 1, 1).unwrap();
        let v = lift(&PointPair::from_ints(&[1, 1], &[1, 0]).unwrap(), &s).unwrap();
        // order: x0y0, x0y1, x1y0, x1y1
        assert_eq!(v, vec![int(1), int(0), int(1), int(0)]);
    }

    #[test]
    fn combine_and_evaluate() {
        let s = Shape::new(1, 1, 2, 1).unwrap();
        assert!(combine(&s, &[]).unwrap().is_zero());
        let pt = PointPair::from_ints(&[1, 2], &[1, -1]).unwrap();
        let f = rank1(&int(3), &pt, &s).unwrap();
        // <(1,2),(2,-1)> = 0
        assert!(evaluate_at(&f, &[int(2), int(-1)], &[int(5), int(7)]).unwrap().is_zero());
        // 3 * (1+2*1)^2 * (1-1*2)
        assert_eq!(evaluate_at(&f, &[int(1), int(1)], &[int(1), int(2)]).unwrap(), int(-27));
    }

    #[test]
    fn from_terms_validates() {
        let s = Shape::new(1, 1, 2, 1).unwrap();
        assert!(BiForm::from_terms(s, [(vec![1, 0], vec![1, 0], int(1))]).is_err());
        let f = BiForm::from_terms(
            s,
            [(vec![2, 0], vec![1, 0], int(1)), (vec![2, 0], vec![1, 0], int(-1))],
        )
        .unwrap();
        assert!(f.is_zero());
    }
}
