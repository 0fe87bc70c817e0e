use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;

use super::lines::{find_special_line, SpecialLine};
use super::{check_rho_prime, distinct, lifts, StructureError, WitnessDecomposition};
use crate::algebra::matrix;
use crate::algebra::rational::Rational;
use crate::forms::{coords_on_line_span, BiForm, BinaryForm, LineKind, PointPair, ProjPoint};
use crate::sylvester;

/// `p` split as the common part `E` plus one binary form `Q` on a line slice.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitDecomposition {
    pub target: BiForm,
    /// The slice; `members` are the points of `S` and `A` on it.
    pub slice: SpecialLine,
    /// Sorted.
    pub e: Vec<PointPair>,
    pub q_vector: Vec<Rational>,
    pub q_form: BinaryForm,
    pub border_rank: usize,
    /// Rank of `q_form`.
    pub residual_rank: usize,
    /// Rank of `p`, the common size of the decompositions.
    pub rank: usize,
}

impl SplitDecomposition {
    pub fn kind(&self) -> LineKind {
        self.slice.kind
    }

    /// Same kind, slice, `E` and border rank.
    pub fn agrees_with(&self, other: &SplitDecomposition) -> bool {
        self.slice.same_slice(&other.slice) && self.e == other.e && self.border_rank == other.border_rank
    }
}

/// The point `Q` of `span(S \ G) ∩ span(A \ G)` with `p` in
/// `span(G ∪ {Q})`, scaled so that `p - Q` lies in `span(G)`.
pub fn unique_q(
    p: &BiForm,
    s: &WitnessDecomposition,
    a: &WitnessDecomposition,
    g: &[PointPair],
) -> Result<Vec<Rational>, StructureError> {
    if s.sorted_points() == a.sorted_points() {
        return Err(StructureError::IdenticalWitnesses);
    }
    let target = p.to_dense();
    if g.is_empty() {
        return Ok(target);
    }
    let shape = p.shape();
    let dim = shape.dim();
    let rest = |w: &WitnessDecomposition| -> Vec<PointPair> {
        w.points().into_iter().filter(|x| !g.contains(x)).collect()
    };
    let common = matrix::span_intersect(dim, &lifts(&rest(s), &shape)?, &lifts(&rest(a), &shape)?);
    let mut with_p = lifts(g, &shape)?;
    with_p.push(target.clone());
    let v = matrix::span_intersect(dim, &common, &with_p);
    if v.len() != 1 {
        return Err(StructureError::IntersectionNotPoint(v.len()));
    }
    let mut basis = lifts(g, &shape)?;
    basis.push(v[0].clone());
    let c = matrix::coordinates(dim, &basis, &target).ok_or(StructureError::IntersectionNotPoint(0))?;
    let lambda = c.last().expect("nonempty").clone();
    if lambda.is_zero() {
        return Err(StructureError::IntersectionNotPoint(0));
    }
    Ok(v[0].iter().map(|x| x * &lambda).collect())
}

/// Finds the special line of `S ∪ A`, the common part `E`, the binary form
/// `Q` on the line and its border rank, checking `|E| = r + b - d - 2`
/// with `d` the degree of the line slice.
pub fn analyze_pair(
    p: &BiForm,
    s: &WitnessDecomposition,
    a: &WitnessDecomposition,
) -> Result<SplitDecomposition, StructureError> {
    if !s.evinces(p) {
        return Err(StructureError::NotAWitness("S".to_string()));
    }
    if !a.evinces(p) {
        return Err(StructureError::NotAWitness("A".to_string()));
    }
    if s.len() != a.len() {
        return Err(StructureError::SizeMismatch(s.len(), a.len()));
    }
    if s.sorted_points() == a.sorted_points() {
        return Err(StructureError::IdenticalWitnesses);
    }
    let shape = p.shape();
    let mut union = s.points();
    union.extend(a.points());
    union.sort();
    union.dedup();
    let slice = find_special_line(&union, &shape).ok_or(StructureError::NoSpecialLine)?;
    let off = |w: &WitnessDecomposition| -> Vec<PointPair> {
        let mut v: Vec<PointPair> = w.points().into_iter().filter(|x| !slice.contains(x)).collect();
        v.sort();
        v
    };
    let (s_rest, a_rest) = (off(s), off(a));
    if s_rest != a_rest {
        return Err(StructureError::EMismatch { s_rest, a_rest });
    }
    let q_vector = unique_q(p, s, a, &s_rest)?;
    let q_form = coords_on_line_span(&q_vector, slice.kind, &slice.base, &slice.line, &shape)?;
    let (b, rq) = sylvester::border_and_rank(&q_form)?;
    let r = s.len();
    let d = slice.kind.degree(&shape);
    if s_rest.len() + d + 2 != r + b || rq + s_rest.len() != r {
        return Err(StructureError::Bookkeeping { e: s_rest.len(), rank: r, b, d });
    }
    Ok(SplitDecomposition {
        target: p.clone(),
        slice,
        e: s_rest,
        q_vector,
        q_form,
        border_rank: b,
        residual_rank: rq,
        rank: r,
    })
}

/// `E` together with the points of `m` (a decomposition of `Q`) placed on
/// the line slice, weighted to recombine to `p`.
pub fn extend_witness(
    split: &SplitDecomposition,
    m: &[(Rational, ProjPoint)],
) -> Result<WitnessDecomposition, StructureError> {
    let mut points = split.e.clone();
    for (_, x) in m {
        points.push(split.slice.point_at(&x.coords()[0], &x.coords()[1]));
    }
    if !distinct(&points) {
        return Err(StructureError::DuplicatePoints);
    }
    let shape = split.target.shape();
    let w = WitnessDecomposition::fit(&split.target, points)?;
    if w.len() != split.rank || !w.evinces(&split.target) || !check_rho_prime(&shape, &w.points()) {
        return Err(StructureError::NotAWitness(format!("extension by {} points", m.len())));
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairOutcome {
    pub i: usize,
    pub j: usize,
    pub agrees: bool,
    pub kind: Option<LineKind>,
    pub e_size: Option<usize>,
    pub border_rank: Option<usize>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ee7Report {
    pub pairs: Vec<PairOutcome>,
    pub pass: bool,
}

/// Runs [`analyze_pair`] on every pair of the given decompositions of `p`
/// and checks that all pairs report the same line slice, `E` and `b`.
pub fn verify_ee7(p: &BiForm, witnesses: &[WitnessDecomposition]) -> Result<Ee7Report, StructureError> {
    if witnesses.len() < 2 {
        return Err(StructureError::TooFewWitnesses(witnesses.len()));
    }
    let r = witnesses[0].len();
    let mut sets: Vec<Vec<PointPair>> = Vec::new();
    for (i, w) in witnesses.iter().enumerate() {
        if !w.evinces(p) {
            return Err(StructureError::NotAWitness(format!("witness {i}")));
        }
        if w.len() != r {
            return Err(StructureError::SizeMismatch(r, w.len()));
        }
        let set = w.sorted_points();
        if sets.contains(&set) {
            return Err(StructureError::IdenticalWitnesses);
        }
        sets.push(set);
    }
    let mut reference: Option<SplitDecomposition> = None;
    let mut pairs = Vec::new();
    for i in 0..witnesses.len() {
        for j in i + 1..witnesses.len() {
            let outcome = match analyze_pair(p, &witnesses[i], &witnesses[j]) {
                Ok(split) => {
                    let agrees = reference.as_ref().is_none_or(|r| r.agrees_with(&split));
                    let out = PairOutcome {
                        i,
                        j,
                        agrees,
                        kind: Some(split.kind()),
                        e_size: Some(split.e.len()),
                        border_rank: Some(split.border_rank),
                        error: None,
                    };
                    reference.get_or_insert(split);
                    out
                }
                Err(e) => PairOutcome {
                    i,
                    j,
                    agrees: false,
                    kind: None,
                    e_size: None,
                    border_rank: None,
                    error: Some(format!("{e}")),
                },
            };
            pairs.push(outcome);
        }
    }
    let pass = pairs.iter().all(|o| o.agrees);
    Ok(Ee7Report { pairs, pass })
}
