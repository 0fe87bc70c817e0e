use alloc::vec::Vec;

use super::{lifts, StructureError, WitnessDecomposition};
use crate::algebra::matrix::{self, Matrix};
use crate::algebra::rational::{self, Rational};
use crate::forms::{BiForm, PointPair, ProjPoint, Shape};
use crate::random;

/// Detects the configuration where every point of `S ∪ A` has the same
/// coordinate in one factor and the other coordinates span a plane and lie
/// on a common conic. Returns the index (0 or 1) of the varying factor.
///
/// Needs at least six points: any five points of a plane lie on a conic.
pub fn case_iii_recognizer(s: &WitnessDecomposition, a: &WitnessDecomposition) -> Option<usize> {
    let mut pts = s.points();
    pts.extend(a.points());
    pts.sort();
    pts.dedup();
    if pts.len() < 6 {
        return None;
    }
    (0..2).find(|&i| {
        let fixed = pts[0].factor(1 - i);
        pts.iter().all(|p| p.factor(1 - i) == fixed) && on_plane_conic(&pts.iter().map(|p| p.factor(i)).collect::<Vec<_>>())
    })
}

fn on_plane_conic(points: &[&ProjPoint]) -> bool {
    let len = points[0].coords().len();
    let coords: Vec<Vec<Rational>> = points.iter().map(|p| p.coords().to_vec()).collect();
    let (_, pivots) = Matrix::from_rows(len, &coords).rref();
    if pivots.len() != 3 {
        return false;
    }
    let rows: Vec<Vec<Rational>> = coords
        .iter()
        .map(|c| {
            let (x, y, z) = (&c[pivots[0]], &c[pivots[1]], &c[pivots[2]]);
            alloc::vec![x * x, x * y, x * z, y * y, y * z, z * z]
        })
        .collect();
    matrix::rank(6, &rows) <= 5
}

/// `2 d1 + 2` points on a conic in a plane of `P^n1`, all with the same
/// second coordinate, split into two sets of `d1 + 1` whose spans meet in
/// the form `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConicConfiguration {
    pub p: BiForm,
    pub s: WitnessDecomposition,
    pub a: WitnessDecomposition,
}

pub fn conic_configuration(shape: &Shape, seed: u64, bound: i64) -> Result<ConicConfiguration, StructureError> {
    if shape.n1 < 2 {
        return Err(StructureError::Infeasible(alloc::format!("a conic needs n1 >= 2, got {}", shape.n1)));
    }
    let k = shape.d1 + 1;
    for attempt in 0..40 {
        let mut rng = random::trial_rng(seed, attempt);
        let frame: Vec<Vec<Rational>> = (0..3).map(|_| random::small_vector(&mut rng, shape.n1 + 1, bound)).collect();
        if matrix::rank(shape.n1 + 1, &frame) < 3 {
            continue;
        }
        let fixed = random::small_point(&mut rng, shape.n2, bound);
        let points: Vec<PointPair> = (0..2 * k as i64)
            .map(|i| {
                let t = rational::int(i - k as i64);
                let c: Vec<Rational> = (0..=shape.n1)
                    .map(|j| &frame[0][j] + &t * &frame[1][j] + &t * &t * &frame[2][j])
                    .collect();
                PointPair { p1: ProjPoint::new(c).expect("independent frame"), p2: fixed.clone() }
            })
            .collect();
        let (sp, ap) = points.split_at(k);
        let meet = matrix::span_intersect(shape.dim(), &lifts(sp, shape)?, &lifts(ap, shape)?);
        if meet.len() != 1 {
            continue;
        }
        let p = BiForm::from_dense(*shape, &meet[0])?;
        let (Ok(s), Ok(a)) = (WitnessDecomposition::fit(&p, sp.to_vec()), WitnessDecomposition::fit(&p, ap.to_vec()))
        else {
            continue;
        };
        if s.evinces(&p) && a.evinces(&p) {
            return Ok(ConicConfiguration { p, s, a });
        }
    }
    Err(StructureError::GenerationFailed(alloc::format!("no conic configuration for shape {shape}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::LineKind;
    use crate::structure::{analyze_pair, generate_instance};

    #[test]
    fn flags_conic_configuration() {
        let shape = Shape::new(2, 1, 2, 3).unwrap();
        let c = conic_configuration(&shape, 1, 10).unwrap();
        assert_eq!(c.s.len(), 3);
        assert!(matches!(analyze_pair(&c.p, &c.s, &c.a), Err(StructureError::NoSpecialLine)));
        assert_eq!(case_iii_recognizer(&c.s, &c.a), Some(0));
    }

    #[test]
    fn line_instances_are_not_flagged() {
        let shape = Shape::new(1, 1, 4, 4).unwrap();
        let inst = generate_instance(&shape, LineKind::Beta, 2, 0, 9, 10).unwrap();
        assert_eq!(case_iii_recognizer(&inst.s, &inst.a), None);
    }
}
