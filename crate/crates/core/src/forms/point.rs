use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{FormError, Shape};
use crate::algebra::rational::{self, Rational};

/// A point of projective space, stored with its first nonzero coordinate
/// equal to 1 so that equality and ordering are projective.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(Vec<Rational>);

impl ProjPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self, FormError> {
        let Some(first) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(FormError::ZeroPoint);
        };
        if first.is_one() {
            return Ok(ProjPoint(coords));
        }
        Ok(ProjPoint(coords.into_iter().map(|c| c / &first).collect()))
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, FormError> {
        Self::new(coords.iter().map(|&c| rational::int(c)).collect())
    }

    /// Standard basis point `e_i` of `P^n`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = alloc::vec![Rational::zero(); n + 1];
        v[i] = Rational::one();
        ProjPoint(v)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            f.write_str(&rational::format(c))?;
        }
        f.write_str(")")
    }
}

/// A point of `P^n1 x P^n2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointPair {
    pub p1: ProjPoint,
    pub p2: ProjPoint,
}

impl PointPair {
    pub fn new(p1: Vec<Rational>, p2: Vec<Rational>) -> Result<Self, FormError> {
        Ok(PointPair { p1: ProjPoint::new(p1)?, p2: ProjPoint::new(p2)? })
    }

    pub fn from_ints(p1: &[i64], p2: &[i64]) -> Result<Self, FormError> {
        Ok(PointPair { p1: ProjPoint::from_ints(p1)?, p2: ProjPoint::from_ints(p2)? })
    }

    pub fn check_shape(&self, shape: &Shape) -> Result<(), FormError> {
        check_len(self.p1.coords().len(), shape.n1 + 1)?;
        check_len(self.p2.coords().len(), shape.n2 + 1)
    }

    /// Coordinates of factor `i` (0 or 1).
    pub fn factor(&self, i: usize) -> &ProjPoint {
        if i == 0 {
            &self.p1
        } else {
            &self.p2
        }
    }
}

impl fmt::Debug for PointPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}x{:?}", self.p1, self.p2)
    }
}

pub(crate) fn check_len(found: usize, expected: usize) -> Result<(), FormError> {
    if found == expected {
        Ok(())
    } else {
        Err(FormError::DimensionMismatch { expected, found })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let p = ProjPoint::from_ints(&[0, 3, -6]).unwrap();
        assert_eq!(p.coords(), &[rational::int(0), rational::int(1), rational::int(-2)]);
        assert_eq!(p, ProjPoint::from_ints(&[0, -1, 2]).unwrap());
        assert_eq!(ProjPoint::from_ints(&[0, 0]), Err(FormError::ZeroPoint));
    }

    #[test]
    fn pair_shape_check() {
        let s = Shape::new(1, 2, 1, 1).unwrap();
        let pt = PointPair::from_ints(&[1, 1], &[1, 0, 2]).unwrap();
        assert!(pt.check_shape(&s).is_ok());
        let bad = PointPair::from_ints(&[1, 1, 1], &[1, 0, 2]).unwrap();
        assert!(bad.check_shape(&s).is_err());
    }
}
