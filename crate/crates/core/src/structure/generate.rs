use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use super::lines::{find_special_line, SpecialLine};
use super::{
    check_rho_prime, hilbert_defect, hypothesis_a, hypothesis_b, lifts, StructureError,
    WitnessDecomposition,
};
use crate::algebra::matrix;
use crate::algebra::rational::Rational;
use crate::forms::{line_span_vector, lift, BiForm, BinaryForm, LineEmbed, LineKind, PointPair, ProjPoint, Shape};
use crate::random::{self, TrialRng};
use crate::sylvester::{self, BinaryWitness};

const ATTEMPTS: u64 = 40;

/// Metadata of a generated instance: the planted slice (its members are the
/// line points of `S` and `A`), `E`, and the binary form `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceMeta {
    pub slice: SpecialLine,
    pub e: Vec<PointPair>,
    pub b: usize,
    pub rank: usize,
    pub q_form: BinaryForm,
    pub seed: u64,
    pub coord_bound: i64,
}

/// A form `p` with two different minimal decompositions `S` and `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub p: BiForm,
    pub s: WitnessDecomposition,
    pub a: WitnessDecomposition,
    pub meta: InstanceMeta,
}

/// Plants a binary form `Q` of border rank `b` on a random line slice of the
/// given kind, picks two of its rank decompositions `M1 != M2`, and adds
/// `e_count` random points off the slice: `S = E ∪ M1`, `A = E ∪ M2`.
///
/// For `b < (d + 2) / 2` (with `d` the slice degree) `Q` is the point where
/// `span{l^(d-b+1) m : deg m = b - 1}` meets the span of `M1`'s pure powers,
/// so `Q` has rank `d + 2 - b`; `M2` is then sampled from the family of its
/// decompositions. For `b = (d + 2) / 2`, `Q` is the intersection point of
/// the spans of two random `b`-sets.
pub fn generate_instance(
    shape: &Shape,
    kind: LineKind,
    b: usize,
    e_count: usize,
    seed: u64,
    coord_bound: i64,
) -> Result<Instance, StructureError> {
    let d = kind.degree(shape);
    if b < 2 || 2 * b > d + 2 {
        return Err(StructureError::Infeasible(format!(
            "border rank {b} outside 2..={} for a {} slice of degree {d}",
            (d + 2) / 2,
            kind.name()
        )));
    }
    let rq = d + 2 - b;
    let r = e_count + rq;
    if !hypothesis_a(shape, r) && !hypothesis_b(shape, r) {
        return Err(StructureError::Infeasible(format!(
            "rank {r} violates both 2r <= 1 + d1 + d2 with |d1 - d2| <= 2 and r <= min(d1, d2) for shape {shape}"
        )));
    }
    if shape.factor(kind.moving_factor()).0 == 0 {
        return Err(StructureError::Infeasible(format!("the {} factor is a point", kind.name())));
    }
    for attempt in 0..ATTEMPTS {
        let mut rng = random::trial_rng(seed, attempt);
        if let Some(inst) = try_generate(shape, kind, b, e_count, seed, coord_bound, &mut rng) {
            return Ok(inst);
        }
    }
    Err(StructureError::GenerationFailed(format!(
        "no valid configuration in {ATTEMPTS} attempts (shape {shape}, {}, b = {b}, |E| = {e_count})",
        kind.name()
    )))
}

fn try_generate(
    shape: &Shape,
    kind: LineKind,
    b: usize,
    e_count: usize,
    seed: u64,
    bound: i64,
    rng: &mut TrialRng,
) -> Option<Instance> {
    let d = kind.degree(shape);
    let (n_moving, _) = shape.factor(kind.moving_factor());
    let (n_fixed, _) = shape.factor(1 - kind.moving_factor());
    let base = random::small_point(rng, n_fixed, bound);
    let line = LineEmbed::new(
        random::small_vector(rng, n_moving + 1, bound),
        random::small_vector(rng, n_moving + 1, bound),
    )
    .ok()?;
    let (q, m1, m2) = plant_binary(d, b, rng, bound)?;

    let mut slice = SpecialLine { kind, base, line, members: Vec::new() };
    let on_line = |w: &BinaryWitness| -> Vec<PointPair> {
        w.iter().map(|(_, x)| slice.point_at(&x.coords()[0], &x.coords()[1])).collect()
    };
    let (l1, l2) = (on_line(&m1), on_line(&m2));
    let mut members: Vec<PointPair> = l1.iter().chain(&l2).cloned().collect();
    members.sort();
    members.dedup();
    slice.members = members;

    let mut e: Vec<PointPair> = Vec::new();
    while e.len() < e_count {
        let pt = random::small_point_pair(rng, shape, bound);
        if !slice.contains(&pt) && !e.contains(&pt) {
            e.push(pt);
        }
    }
    let mut target = line_span_vector(&q, kind, &slice.base, &slice.line, shape).ok()?;
    for pt in &e {
        let w = random::nonzero_int(rng, bound);
        for (t, x) in target.iter_mut().zip(lift(pt, shape).ok()?) {
            *t += x * &w;
        }
    }
    let p = BiForm::from_dense(*shape, &target).ok()?;
    let s = WitnessDecomposition::fit(&p, e.iter().chain(&l1).cloned().collect()).ok()?;
    let a = WitnessDecomposition::fit(&p, e.iter().chain(&l2).cloned().collect()).ok()?;
    // independent lifts and nonzero weights: p is in the span of no proper subset
    if !s.evinces(&p) || !a.evinces(&p) || !check_rho_prime(shape, &s.points()) || !check_rho_prime(shape, &a.points()) {
        return None;
    }
    let mut union = s.points();
    union.extend(a.points());
    union.sort();
    union.dedup();
    if hilbert_defect(&union, shape).ok()? == 0 {
        return None;
    }
    let found = find_special_line(&union, shape)?;
    if !found.same_slice(&slice) || found.members != slice.members {
        return None;
    }
    e.sort();
    let rank = s.len();
    Some(Instance {
        p,
        s,
        a,
        meta: InstanceMeta { slice, e, b, rank, q_form: q, seed, coord_bound: bound },
    })
}

/// A binary form of degree `d`, border rank `b` and rank `d + 2 - b`, with
/// two different rational decompositions.
fn plant_binary(d: usize, b: usize, rng: &mut TrialRng, bound: i64) -> Option<(BinaryForm, BinaryWitness, BinaryWitness)> {
    let rq = d + 2 - b;
    let mut pool: Vec<ProjPoint> = Vec::new();
    while pool.len() < 2 * rq + 1 {
        let x = random::small_point(rng, 1, bound);
        if !pool.contains(&x) {
            pool.push(x);
        }
    }
    let powers = |pts: &[ProjPoint]| -> Vec<Vec<Rational>> {
        pts.iter().map(|x| BinaryForm::pure_power(x.coords(), d).coeffs().to_vec()).collect()
    };
    let (q, m1, m2) = if rq > b {
        let rho = &pool[0];
        let head = BinaryForm::pure_power(rho.coords(), d - b + 1);
        let osculating: Vec<Vec<Rational>> =
            (0..b).map(|i| head.mul(&BinaryForm::monomial(b - 1, i)).coeffs().to_vec()).collect();
        let m1: Vec<ProjPoint> = pool[1..=rq].to_vec();
        let q = single_intersection(d, &osculating, &powers(&m1))?;
        let w1 = sylvester::attach_weights(&q, &m1)?;
        let w2 = sylvester::sample_solutions_from(&q, &w1, 1, rng.gen()).ok()?.pop()?;
        (q, w1, w2)
    } else {
        let m1: Vec<ProjPoint> = pool[..rq].to_vec();
        let m2: Vec<ProjPoint> = pool[rq..2 * rq].to_vec();
        let q = single_intersection(d, &powers(&m1), &powers(&m2))?;
        (q.clone(), sylvester::attach_weights(&q, &m1)?, sylvester::attach_weights(&q, &m2)?)
    };
    if sylvester::border_and_rank(&q).ok()? != (b, rq)
        || !sylvester::is_witness(&q, &m1, rq)
        || !sylvester::is_witness(&q, &m2, rq)
    {
        return None;
    }
    Some((q, m1, m2))
}

fn single_intersection(d: usize, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Option<BinaryForm> {
    let v = matrix::span_intersect(d + 1, a, b);
    (v.len() == 1).then(|| BinaryForm::new(v[0].clone()).ok()).flatten()
}

/// Counts random point sets of size `size` whose span contains `p`. Half
/// of each candidate's points are drawn from `pool` when it is nonempty.
/// A count of zero is evidence, not proof, that no smaller decomposition
/// exists.
pub fn falsify_smaller(
    p: &BiForm,
    size: usize,
    trials: usize,
    pool: &[PointPair],
    rng: &mut TrialRng,
    bound: i64,
) -> Result<usize, StructureError> {
    let shape = p.shape();
    let target = p.to_dense();
    let mut hits = 0;
    for _ in 0..trials {
        let mut cand: Vec<PointPair> = Vec::with_capacity(size);
        while cand.len() < size {
            let pt = if !pool.is_empty() && rng.gen_bool(0.5) {
                pool.choose(rng).expect("nonempty").clone()
            } else {
                random::small_point_pair(rng, &shape, bound)
            };
            if !cand.contains(&pt) {
                cand.push(pt);
            }
        }
        if matrix::span_contains(shape.dim(), &lifts(&cand, &shape)?, &target) {
            hits += 1;
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{analyze_pair, is_minimal_spanning};

    #[test]
    fn small_beta_instance() {
        let shape = Shape::new(1, 1, 4, 4).unwrap();
        let inst = generate_instance(&shape, LineKind::Beta, 2, 0, 3, 10).unwrap();
        assert_eq!(inst.s.len(), 4);
        assert_eq!(inst.a.len(), 4);
        assert_ne!(inst.s.sorted_points(), inst.a.sorted_points());
        assert!(is_minimal_spanning(&inst.p, &inst.s).unwrap());
        let split = analyze_pair(&inst.p, &inst.s, &inst.a).unwrap();
        assert!(split.slice.same_slice(&inst.meta.slice));
        assert_eq!(split.border_rank, 2);
        assert!(split.e.is_empty());
    }

    #[test]
    fn infeasible_requests() {
        let shape = Shape::new(2, 2, 5, 5).unwrap();
        assert!(matches!(
            generate_instance(&shape, LineKind::Beta, 2, 1, 0, 10),
            Err(StructureError::Infeasible(_))
        ));
        assert!(matches!(
            generate_instance(&shape, LineKind::Beta, 4, 0, 0, 10),
            Err(StructureError::Infeasible(_))
        ));
    }
}
