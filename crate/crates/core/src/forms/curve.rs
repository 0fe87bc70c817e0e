use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::binary::{linear_power, linear_powers, poly_mul};
use super::biform::lift_coords;
use super::point::check_len;
use super::{BiForm, BinaryForm, FormError, ProjPoint, Shape};
use crate::algebra::matrix;
use crate::algebra::rational::{self, Rational};

/// Which factor a special line moves in: an alpha-line is `L x [p2]`, a
/// beta-line is `[p1] x L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineKind {
    Alpha,
    Beta,
}

impl LineKind {
    /// Index (0 or 1) of the factor containing the line.
    pub fn moving_factor(self) -> usize {
        match self {
            LineKind::Alpha => 0,
            LineKind::Beta => 1,
        }
    }

    /// Degree of the line slice's lift, `d1` for alpha and `d2` for beta.
    pub fn degree(self, shape: &Shape) -> usize {
        shape.factor(self.moving_factor()).1
    }

    pub fn name(self) -> &'static str {
        match self {
            LineKind::Alpha => "alpha",
            LineKind::Beta => "beta",
        }
    }
}

/// The map `(s:t) -> s*a + t*b` onto a line of `P^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LineEmbed {
    a: Vec<Rational>,
    b: Vec<Rational>,
}

impl LineEmbed {
    pub fn new(a: Vec<Rational>, b: Vec<Rational>) -> Result<Self, FormError> {
        check_len(b.len(), a.len())?;
        if matrix::rank(a.len(), &[a.clone(), b.clone()]) < 2 {
            return Err(FormError::DependentLine);
        }
        Ok(LineEmbed { a, b })
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    /// Projective dimension of the target.
    pub fn target_dim(&self) -> usize {
        self.a.len() - 1
    }

    pub fn point(&self, s: &Rational, t: &Rational) -> Vec<Rational> {
        self.a.iter().zip(&self.b).map(|(x, y)| s * x + t * y).collect()
    }

    /// Parameters `(s, t)` with `s*a + t*b == x`, if `x` is on the line.
    pub fn param_of(&self, x: &[Rational]) -> Option<[Rational; 2]> {
        if x.len() != self.a.len() {
            return None;
        }
        let c = matrix::coordinates(x.len(), &[self.a.clone(), self.b.clone()], x)?;
        Some([c[0].clone(), c[1].clone()])
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.param_of(x).is_some()
    }

    /// Same set of points, possibly with a different parametrization.
    pub fn same_line(&self, other: &LineEmbed) -> bool {
        self.a.len() == other.a.len() && self.contains(&other.a) && self.contains(&other.b)
    }
}

/// One factor of a curve: fixed, or moving linearly along a line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FactorMap {
    /// Raw coordinates; their scale enters lifts of curve points.
    Constant(Vec<Rational>),
    Line(LineEmbed),
}

impl FactorMap {
    fn target_len(&self) -> usize {
        match self {
            FactorMap::Constant(p) => p.len(),
            FactorMap::Line(l) => l.a.len(),
        }
    }

    pub fn is_line(&self) -> bool {
        matches!(self, FactorMap::Line(_))
    }

    pub fn point(&self, s: &Rational, t: &Rational) -> Vec<Rational> {
        match self {
            FactorMap::Constant(p) => p.clone(),
            FactorMap::Line(l) => l.point(s, t),
        }
    }
}

/// A curve of multidegree `(1 or 0, ..., 1 or 0)`: each factor is either a
/// constant point or a line. Alpha- and beta-lines are the two-factor
/// cases with exactly one moving factor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveG {
    factors: Vec<FactorMap>,
}

impl CurveG {
    pub fn new(factors: Vec<FactorMap>) -> Result<Self, FormError> {
        if !factors.iter().any(FactorMap::is_line) {
            return Err(FormError::BadCurve(format!("all {} factors are constant", factors.len())));
        }
        Ok(CurveG { factors })
    }

    pub fn special_line(kind: LineKind, base: &ProjPoint, line: &LineEmbed) -> Self {
        let fixed = FactorMap::Constant(base.coords().to_vec());
        let moving = FactorMap::Line(line.clone());
        let factors = match kind {
            LineKind::Alpha => vec![moving, fixed],
            LineKind::Beta => vec![fixed, moving],
        };
        CurveG { factors }
    }

    pub fn factors(&self) -> &[FactorMap] {
        &self.factors
    }

    /// Raw coordinates of the curve point at parameter `(s:t)`.
    pub fn point(&self, s: &Rational, t: &Rational) -> Vec<Vec<Rational>> {
        self.factors.iter().map(|f| f.point(s, t)).collect()
    }

    /// Degree of the image curve under the lift with the given degrees.
    pub fn degree(&self, degrees: &[usize]) -> usize {
        self.factors.iter().zip(degrees).filter(|(f, _)| f.is_line()).map(|(_, d)| d).sum()
    }
}

/// `f` pulled back along the curve, as a binary form of degree
/// `sum of d_i over moving factors`.
pub fn restrict_to_curve(f: &BiForm, g: &CurveG) -> Result<BinaryForm, FormError> {
    let shape = f.shape();
    check_curve(g, &shape)?;
    let degree = g.degree(&[shape.d1, shape.d2]);
    // images[factor][coordinate][k] = (coordinate image)^k as a t-power list
    let images: Vec<Vec<Vec<Vec<Rational>>>> = g
        .factors
        .iter()
        .enumerate()
        .map(|(i, fm)| {
            let d = shape.factor(i).1;
            match fm {
                FactorMap::Constant(p) => p
                    .iter()
                    .map(|c| (0..=d).map(|k| vec![rational::pow(c, k as u32)]).collect())
                    .collect(),
                FactorMap::Line(l) => {
                    l.a.iter().zip(&l.b).map(|(x, y)| linear_powers(x, y, d)).collect()
                }
            }
        })
        .collect();
    let mut out = vec![Rational::zero(); degree + 1];
    for (e1, e2, c) in f.terms() {
        let mut prod = vec![c.clone()];
        for (i, e) in [e1, e2].into_iter().enumerate() {
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    prod = poly_mul(&prod, &images[i][j][k]);
                }
            }
        }
        for (o, p) in out.iter_mut().zip(prod) {
            *o += p;
        }
    }
    BinaryForm::new(out)
}

fn check_curve(g: &CurveG, shape: &Shape) -> Result<(), FormError> {
    if g.factors.len() != 2 {
        return Err(FormError::BadCurve(format!("expected 2 factors, got {}", g.factors.len())));
    }
    check_len(g.factors[0].target_len(), shape.n1 + 1)?;
    check_len(g.factors[1].target_len(), shape.n2 + 1)
}

/// Lifts of the curve points at parameters `(1:j)`, `j = 0..=degree`.
fn curve_columns(g: &CurveG, shape: &Shape, degree: usize) -> Result<Vec<Vec<Rational>>, FormError> {
    (0..=degree)
        .map(|j| {
            let x = g.point(&Rational::one(), &rational::int(j as i64));
            lift_coords(&x[0], &x[1], shape)
        })
        .collect()
}

/// The vector in the span of the lifted curve corresponding to the binary
/// form `h`: the pure power `(l s + m t)^D` goes to the lift of the raw
/// curve point at `(l:m)`. `D` is the degree of the lifted curve.
pub fn curve_span_vector(h: &BinaryForm, g: &CurveG, shape: &Shape) -> Result<Vec<Rational>, FormError> {
    check_curve(g, shape)?;
    let d = g.degree(&[shape.d1, shape.d2]);
    check_len(h.degree(), d)?;
    // write h in the basis (s + j t)^d, j = 0..=d
    let basis: Vec<Vec<Rational>> =
        (0..=d).map(|j| linear_power(&Rational::one(), &rational::int(j as i64), d)).collect();
    let c = matrix::coordinates(d + 1, &basis, h.coeffs()).expect("pure powers span binary forms");
    let mut out = vec![Rational::zero(); shape.dim()];
    for (cj, v) in c.iter().zip(curve_columns(g, shape, d)?) {
        if cj.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += x * cj;
        }
    }
    Ok(out)
}

/// Inverse of [`curve_span_vector`].
pub fn coords_on_curve_span(v: &[Rational], g: &CurveG, shape: &Shape) -> Result<BinaryForm, FormError> {
    check_curve(g, shape)?;
    check_len(v.len(), shape.dim())?;
    let d = g.degree(&[shape.d1, shape.d2]);
    let c = matrix::coordinates(shape.dim(), &curve_columns(g, shape, d)?, v).ok_or(FormError::NotInSpan)?;
    let mut h = BinaryForm::zero(d);
    for (j, cj) in c.iter().enumerate() {
        h = h.add(&BinaryForm::pure_power(&[Rational::one(), rational::int(j as i64)], d).scale(cj));
    }
    Ok(h)
}

/// [`curve_span_vector`] for the slice `[base] x L` (beta) or `L x [base]`
/// (alpha).
pub fn line_span_vector(
    h: &BinaryForm,
    kind: LineKind,
    base: &ProjPoint,
    line: &LineEmbed,
    shape: &Shape,
) -> Result<Vec<Rational>, FormError> {
    curve_span_vector(h, &CurveG::special_line(kind, base, line), shape)
}

/// [`coords_on_curve_span`] for a line slice: the binary form whose
/// weighted pure powers lift to `v`.
pub fn coords_on_line_span(
    v: &[Rational],
    kind: LineKind,
    base: &ProjPoint,
    line: &LineEmbed,
    shape: &Shape,
) -> Result<BinaryForm, FormError> {
    coords_on_curve_span(v, &CurveG::special_line(kind, base, line), shape)
}
