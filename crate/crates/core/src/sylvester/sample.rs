use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;

use super::{
    attach_weights, binary_roots, binary_squarefree, catalecticant, dehomogenize, invariants, is_witness, analyze,
    BinaryWitness, SylvesterError, SylvesterResult,
};
use crate::algebra::matrix::Matrix;
use crate::algebra::rational::{self, Rational};
use crate::forms::{BinaryForm, Mobius, ProjPoint};
use crate::random;

const FIRST_ATTEMPTS: usize = 3000;
/// Height bound of the exhaustive search for one planted root.
const PLANT_HEIGHT: i64 = 24;
const SAMPLE_ATTEMPTS_PER_WITNESS: usize = 400;

/// `count` decompositions of `q` with `rank` distinct rational points,
/// pairwise different as point sets. Requires a positive dimensional
/// family of decompositions.
pub fn sample_solutions(q: &BinaryForm, count: usize, seed: u64) -> Result<Vec<BinaryWitness>, SylvesterError> {
    let inv = invariants(q)?;
    check_family(q, &inv)?;
    if count == 0 {
        return Ok(Vec::new());
    }
    let start = analyze(q)?.witness.expect("analyze returns a witness");
    sample_solutions_from(q, &start, count, seed)
}

/// As [`sample_solutions`], starting from a known decomposition `start`,
/// which is never returned itself.
pub fn sample_solutions_from(
    q: &BinaryForm,
    start: &[(Rational, ProjPoint)],
    count: usize,
    seed: u64,
) -> Result<Vec<BinaryWitness>, SylvesterError> {
    let inv = invariants(q)?;
    check_family(q, &inv)?;
    let r = inv.rank;
    if !is_witness(q, start, r) {
        return Err(SylvesterError::BadStart { rank: r });
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let mut rng = random::trial_rng(seed, 0);
    let mut seen: BTreeSet<Vec<ProjPoint>> = BTreeSet::new();
    seen.insert(point_set(start));
    let mut out = Vec::new();
    let frame = if inv.border_rank == 3 && r > inv.border_rank { Frame::new(&inv, start) } else { None };
    let kernel = kernel_of(q, r);
    for _ in 0..count * SAMPLE_ATTEMPTS_PER_WITNESS {
        let candidate = match &frame {
            Some(f) => f.step(&mut rng),
            None => random_plant(&kernel, &mut rng),
        };
        let Some(points) = candidate else { continue };
        let key = sorted(points.clone());
        if seen.contains(&key) {
            continue;
        }
        if let Some(w) = attach_weights(q, &points) {
            if is_witness(q, &w, r) {
                seen.insert(key);
                out.push(w);
                if out.len() == count {
                    return Ok(out);
                }
            }
        }
    }
    Err(SylvesterError::Exhausted { found: out.len(), requested: count })
}

fn check_family(q: &BinaryForm, inv: &SylvesterResult) -> Result<(), SylvesterError> {
    if kernel_of(q, inv.rank).len() < 2 {
        return Err(SylvesterError::UniqueDecomposition { border_rank: inv.border_rank, rank: inv.rank });
    }
    Ok(())
}

fn kernel_of(q: &BinaryForm, r: usize) -> Vec<Vec<Rational>> {
    catalecticant(q, r).map(|c| c.kernel_basis()).unwrap_or_default()
}

fn point_set(w: &[(Rational, ProjPoint)]) -> Vec<ProjPoint> {
    sorted(w.iter().map(|(_, p)| p.clone()).collect())
}

fn sorted(mut v: Vec<ProjPoint>) -> Vec<ProjPoint> {
    v.sort();
    v
}

/// Deterministic search for `r` rational points whose vanishing form lies
/// in `ker Cat_r`.
pub(super) fn find_first(q: &BinaryForm, r: usize) -> Option<Vec<ProjPoint>> {
    let kernel = kernel_of(q, r);
    let planted = kernel.len().checked_sub(1)?;
    let small: Vec<Rational> = (0..64i64).map(|i| rational::int(if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 })).collect();
    for offset in 0..=small.len() - planted.max(1) {
        if let Some(p) = plant(&kernel, &small[offset..offset + planted]) {
            return Some(p);
        }
    }
    if planted == 1 {
        if let Some(p) = by_height(PLANT_HEIGHT).find_map(|x| plant(&kernel, &[x])) {
            return Some(p);
        }
    }
    let mut rng = random::trial_rng(0, 0);
    (0..FIRST_ATTEMPTS).find_map(|_| random_plant(&kernel, &mut rng))
}

/// Every rational `a/b` with `|a|, b <= h` in lowest terms, by increasing
/// height `max(|a|, b)`.
fn by_height(h: i64) -> impl Iterator<Item = Rational> {
    (0..=h).flat_map(move |m| {
        let mut out = Vec::new();
        for b in 1..=m.max(1) {
            for a in -m..=m {
                if a.abs().max(b) == m && num_integer::gcd(a, b) == 1 {
                    out.push(Rational::new(a.into(), b.into()));
                }
            }
        }
        out
    })
}

fn random_plant(kernel: &[Vec<Rational>], rng: &mut impl Rng) -> Option<Vec<ProjPoint>> {
    let planted = kernel.len().checked_sub(1)?;
    let mut roots: Vec<Rational> = Vec::with_capacity(planted);
    while roots.len() < planted {
        let x = Rational::new(rng.gen_range(-12i64..=12).into(), rng.gen_range(1i64..=3).into());
        if !roots.contains(&x) {
            roots.push(x);
        }
    }
    plant(kernel, &roots)
}

/// The element of `span(kernel)` vanishing at every point of `roots`, if
/// unique, and its roots when they are all rational and simple.
fn plant(kernel: &[Vec<Rational>], roots: &[Rational]) -> Option<Vec<ProjPoint>> {
    binary_roots(&plant_element(kernel, roots)?, roots)
}

fn plant_element(kernel: &[Vec<Rational>], roots: &[Rational]) -> Option<Vec<Rational>> {
    let dim = kernel.len();
    let rows: Vec<Vec<Rational>> =
        roots.iter().map(|x| kernel.iter().map(|g| dehomogenize(g).eval(x)).collect()).collect();
    let combos = Matrix::from_rows(dim, &rows).kernel_basis();
    if combos.len() != 1 {
        return None;
    }
    let len = kernel[0].len();
    let mut g = vec![Rational::zero(); len];
    for (c, k) in combos[0].iter().zip(kernel) {
        for (slot, x) in g.iter_mut().zip(k) {
            *slot += c * x;
        }
    }
    Some(g)
}

/// A squarefree element of the apolar forms of degree `rank`, with no
/// condition on where its roots lie.
pub(super) fn squarefree_element(q: &BinaryForm, inv: &SylvesterResult) -> Option<Vec<Rational>> {
    if inv.rank == inv.border_rank && inv.kernel_dim == 1 {
        return Some(inv.kernel_vector.clone());
    }
    let kernel = kernel_of(q, inv.rank);
    let planted = kernel.len().checked_sub(1)?;
    (0..64i64).find_map(|offset| {
        let roots: Vec<Rational> = (0..planted as i64).map(|i| rational::int(offset + i)).collect();
        plant_element(&kernel, &roots).filter(|g| binary_squarefree(g))
    })
}

/// Coordinates in which the point `rho` carrying the border decomposition
/// sits at `(1:0)`. There the decompositions with `r` finite points
/// `(x_j:1)` are exactly the sets with fixed first and second power sums,
/// a quadric on which new rational points come from lines through a known
/// one.
struct Frame {
    back: Mobius,
    base: Vec<Rational>,
}

impl Frame {
    fn new(inv: &SylvesterResult, start: &[(Rational, ProjPoint)]) -> Option<Frame> {
        let b = inv.border_rank;
        let f = dehomogenize(&inv.kernel_vector);
        let rho = match f.degree()? {
            0 => ProjPoint::basis(1, 0),
            deg if deg == b => {
                let roots = f.rational_roots().ok()?;
                if roots.len() != 1 || roots[0].1 != b {
                    return None;
                }
                ProjPoint::new(vec![roots[0].0.clone(), Rational::one()]).ok()?
            }
            _ => return None,
        };
        let (r0, r1) = (rho.coords()[0].clone(), rho.coords()[1].clone());
        let to_frame = Mobius::new(r0.clone(), r1.clone(), r1, -r0)?;
        let base = start
            .iter()
            .map(|(_, p)| {
                let img = to_frame.apply_point(p.coords());
                (!img[1].is_zero()).then(|| &img[0] / &img[1])
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Frame { back: to_frame.inverse(), base })
    }

    fn step(&self, rng: &mut impl Rng) -> Option<Vec<ProjPoint>> {
        let r = self.base.len();
        let mut delta: Vec<Rational> = (0..r - 1).map(|_| random::small_int(rng, 3)).collect();
        let sum: Rational = delta.iter().sum();
        delta.push(-sum);
        let norm = rational::dot(&delta, &delta);
        if norm.is_zero() {
            return None;
        }
        let tau = rational::int(-2) * rational::dot(&self.base, &delta) / norm;
        if tau.is_zero() {
            return None;
        }
        let x: Vec<Rational> = self.base.iter().zip(&delta).map(|(a, d)| a + &tau * d).collect();
        let mut check = x.clone();
        check.sort();
        check.dedup();
        if check.len() != r {
            return None;
        }
        x.into_iter()
            .map(|xi| ProjPoint::new(self.back.apply_point(&[xi, Rational::one()])).ok())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn pencil_with_reciprocal_roots() {
        let terms: Vec<(Rational, ProjPoint)> = [(1, (1, 0)), (-3, (4, -5)), (2, (6, 7))]
            .iter()
            .map(|&(w, (x, y))| (int(w), ProjPoint::from_ints(&[x, y]).unwrap()))
            .collect();
        let q = BinaryForm::combine(4, &terms);
        let res = super::super::analyze(&q).unwrap();
        assert_eq!((res.border_rank, res.rank, res.kernel_dim), (3, 3, 2));
        assert!(is_witness(&q, res.witness.as_ref().unwrap(), 3));
    }

    #[test]
    fn heights_enumerate_in_order() {
        let v: Vec<Rational> = by_height(2).collect();
        assert_eq!(v.len(), 1 + 2 + 4);
        assert_eq!(v[..3], [int(-1), int(0), int(1)]);
        assert!(v.contains(&Rational::new((-1).into(), 2.into())));
    }

    #[test]
    fn tangent_cubic_samples() {
        let q = BinaryForm::monomial(3, 1);
        let a = sample_solutions(&q, 2, 11).unwrap();
        assert_eq!(a.len(), 2);
        assert_ne!(point_set(&a[0]), point_set(&a[1]));
        for w in &a {
            assert!(is_witness(&q, w, 3));
        }
        assert_eq!(sample_solutions(&q, 2, 11).unwrap(), a);
        assert!(sample_solutions(&q, 0, 11).unwrap().is_empty());
    }

    #[test]
    fn unique_decomposition_rejected() {
        let terms: BinaryWitness =
            (1..=2).map(|i| (int(1), ProjPoint::from_ints(&[1, i]).unwrap())).collect();
        let q = BinaryForm::combine(5, &terms);
        assert!(matches!(sample_solutions(&q, 1, 0), Err(SylvesterError::UniqueDecomposition { .. })));
    }

    /// Five points with weights `1 / prod (x_j - x_i)` give `s^4 * h` for a
    /// quadratic `h`, moved by a substitution so that rho is not `(1:0)`.
    #[test]
    fn border_rank_three_walk() {
        let xs: Vec<Rational> = (0..5).map(int).collect();
        let m = Mobius::new(int(1), int(2), int(-1), int(1)).unwrap();
        let mut q_frame = BinaryForm::zero(6);
        for x in &xs {
            let w = xs.iter().filter(|y| *y != x).fold(Rational::one(), |acc, y| acc / (x - y));
            q_frame = q_frame.add(&BinaryForm::pure_power(&[x.clone(), Rational::one()], 6).scale(&w));
        }
        let q0 = q_frame.substitute(&m);
        let points: Vec<ProjPoint> =
            xs.iter().map(|x| ProjPoint::new(m.apply_point(&[x.clone(), Rational::one()])).unwrap()).collect();
        let start = attach_weights(&q0, &points).unwrap();
        let inv = invariants(&q0).unwrap();
        assert_eq!((inv.border_rank, inv.rank), (3, 5));
        let more = sample_solutions_from(&q0, &start, 4, 5).unwrap();
        assert_eq!(more.len(), 4);
        for w in &more {
            assert!(is_witness(&q0, w, 5));
            assert_ne!(point_set(w), point_set(&start));
        }
    }
}
