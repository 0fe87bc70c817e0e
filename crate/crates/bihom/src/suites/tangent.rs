//! Tangent vectors of two-factor (and three-factor) jets: the rank formula,
//! decompositions along curves and lines, and lower-bound evidence.

use std::collections::BTreeMap;

use bihom_core::algebra::rational::Rational;
use bihom_core::forms::{LineEmbed, ProjPoint, Shape};
use bihom_core::random::{self, TrialRng};
use bihom_core::tangential::{
    dependency_set, eval_tangent, lower_bound, reducible_decompose, tangent_form, tangential_decompose,
    tangential_rank, DecompositionKind, JetK, TangentDecomposition,
};
use rand::Rng;
use serde_json::Value;

use super::{run_over_shapes, shapes_or, SuiteConfig, SuiteError};
use crate::json;
use crate::report::{TrialOutcome, VerificationReport};

const TANGENT_SHAPES: &[(usize, usize, usize, usize)] =
    &[(1, 1, 1, 1), (2, 2, 1, 1), (1, 1, 2, 3), (1, 2, 2, 2), (2, 1, 3, 2), (1, 1, 4, 1), (2, 2, 2, 2)];

/// Which factors move: both, only the first, or only the second.
const MODES: [&str; 3] = ["both", "first", "second"];

/// A random jet with the given dimensions and degrees whose dependency set
/// is `mode` (0: all factors, `m > 0`: only factor `m - 1`).
pub fn random_jet(rng: &mut TrialRng, dims: &[usize], degrees: &[usize], mode: usize, bound: i64) -> JetK {
    loop {
        let base: Vec<Vec<Rational>> = dims.iter().map(|&n| random::small_vector(rng, n + 1, bound)).collect();
        let mut dir: Vec<Vec<Rational>> = dims.iter().map(|&n| random::small_vector(rng, n + 1, bound)).collect();
        if mode > 0 {
            for i in (0..dims.len()).filter(|&i| i != mode - 1) {
                let c = random::small_int(rng, bound);
                dir[i] = base[i].iter().map(|x| x * &c).collect();
            }
        }
        let Ok(j) = JetK::new(degrees.to_vec(), base, dir) else { continue };
        let active = dependency_set(&j);
        let want: Vec<usize> = if mode == 0 { (0..dims.len()).collect() } else { vec![mode - 1] };
        if active == want {
            return j;
        }
    }
}

/// Jets need a direction that can move in each factor.
fn tangent_shapes(cfg: &SuiteConfig, suite: &str) -> Result<Vec<Shape>, SuiteError> {
    let shapes = shapes_or(cfg, TANGENT_SHAPES);
    if let Some(&shape) = shapes.iter().find(|s| s.n1 == 0 || s.n2 == 0) {
        return Err(SuiteError::BadShape { suite: suite.into(), shape, reason: "both factors must have n >= 1".into() });
    }
    Ok(shapes)
}

fn jet_payload(j: &JetK) -> Value {
    serde_json::to_value(json::jet_json(j)).expect("serializes")
}

fn base_points(j: &JetK) -> Vec<ProjPoint> {
    j.base().iter().map(|v| ProjPoint::new(v.clone()).expect("nonzero base")).collect()
}

/// Term count, exact recombination, `[o]` excluded and every point on the
/// line spanned by its factor's base point and direction.
fn check_terms(j: &JetK, dec: &TangentDecomposition, rank: usize) -> Result<(), String> {
    if dec.len() != rank {
        return Err(format!("{} terms, expected {rank}", dec.len()));
    }
    let p = tangent_form(j).map_err(|e| e.to_string())?;
    if dec.to_biform(j).map_err(|e| e.to_string())? != p {
        return Err("terms do not recombine to the tangent vector".into());
    }
    let o = base_points(j);
    for (_, pts) in &dec.terms {
        if *pts == o {
            return Err("the base point [o] appears among the terms".into());
        }
        for (i, x) in pts.iter().enumerate() {
            let on = match LineEmbed::new(j.base()[i].clone(), j.dir()[i].clone()) {
                Ok(line) => line.contains(x.coords()),
                Err(_) => *x == o[i],
            };
            if !on {
                return Err(format!("term point in factor {} is off the jet's line", i + 1));
            }
        }
    }
    Ok(())
}

/// Per-line counts `d1` on `L x [v2]` and `d2` on `[v1] x R`.
fn check_reducible(j: &JetK, red: &TangentDecomposition) -> Result<(), String> {
    let o = base_points(j);
    let d = j.degrees();
    let on_l = red.terms.iter().filter(|(_, x)| x[1] == o[1]).count();
    let on_r = red.terms.iter().filter(|(_, x)| x[0] == o[0]).count();
    if (on_l, on_r) != (d[0], d[1]) || on_l + on_r != red.len() {
        return Err(format!("per-line counts ({on_l}, {on_r}), expected ({}, {})", d[0], d[1]));
    }
    Ok(())
}

/// Rank formula, decompositions and lower-bound evidence for two-factor
/// jets, plus the rank formula and evaluation identity for three factors.
pub fn thm_i1(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let shapes = tangent_shapes(cfg, "thm-i1")?;
    let per = cfg.trials.unwrap_or(100usize.div_ceil(shapes.len()));
    let mut params = BTreeMap::new();
    params.insert("falsify".into(), Value::from(cfg.falsify));
    params.insert("modes".into(), Value::from(MODES.to_vec()));
    Ok(run_over_shapes("thm-i1", cfg, shapes, per, params, |shape, rng, out| {
        let mode = rng.gen_range(0..MODES.len());
        let j = random_jet(rng, &[shape.n1, shape.n2], &[shape.d1, shape.d2], mode, cfg.coord_bound);
        two_factor_checks(cfg, shape, &j, rng, out);
        if out.failure.is_some() {
            return;
        }
        three_factor_checks(cfg, rng, out);
    }))
}

fn two_factor_checks(cfg: &SuiteConfig, shape: &Shape, j: &JetK, rng: &mut TrialRng, out: &mut TrialOutcome) {
    let payload = || jet_payload(j);
    let active = dependency_set(j);
    let rank = tangential_rank(j).rank;
    let formula: usize = active.iter().map(|&i| j.degrees()[i]).sum();
    if !out.check(rank == formula, || format!("rank {rank}, formula gives {formula}"), payload) {
        return;
    }
    let dec = match tangential_decompose(j) {
        Ok(d) => d,
        Err(e) => return out.fail(format!("tangential_decompose failed: {e}"), payload()),
    };
    let want = if active.len() == 2 { DecompositionKind::SmoothCurve } else { DecompositionKind::SingleFactor };
    if let Err(e) = check_terms(j, &dec, rank).and_then(|_| {
        if dec.kind == want { Ok(()) } else { Err(format!("decomposition kind {}", dec.kind.name())) }
    }) {
        return out.fail(e, payload());
    }
    if active.len() == 2 {
        let red = match reducible_decompose(j) {
            Ok(d) => d,
            Err(e) => return out.fail(format!("reducible_decompose failed: {e}"), payload()),
        };
        if let Err(e) = check_terms(j, &red, rank).and_then(|_| check_reducible(j, &red)) {
            return out.fail(format!("reducible: {e}"), payload());
        }
        out.count("reducible_checked", 1);
    }
    let lb = match lower_bound(j, cfg.falsify, rng.gen()) {
        Ok(lb) => lb,
        Err(e) => return out.fail(format!("lower_bound failed: {e}"), payload()),
    };
    if !out.check(lb.holds(), || format!("lower bound does not hold: {lb:?}"), payload) {
        return;
    }
    out.count("jets", 1);
    out.count(&format!("active_{}", active.len()), 1);
    out.count(&format!("lower_bound_{}", lb.method.name()), 1);
    out.count("falsification_sets", lb.trials as u64);
    out.count(&format!("rank_{}_{}", shape, rank), 1);
}

fn three_factor_checks(cfg: &SuiteConfig, rng: &mut TrialRng, out: &mut TrialOutcome) {
    let dims: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=2)).collect();
    let degrees: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=3)).collect();
    let mode = rng.gen_range(0..4);
    let j = random_jet(rng, &dims, &degrees, mode, cfg.coord_bound);
    let payload = || jet_payload(&j);
    let rank = tangential_rank(&j).rank;
    let formula: usize = dependency_set(&j).iter().map(|&i| degrees[i]).sum();
    if !out.check(rank == formula, || format!("k=3 rank {rank}, formula gives {formula}"), payload) {
        return;
    }
    let dec = match tangential_decompose(&j) {
        Ok(d) => d,
        Err(e) => return out.fail(format!("k=3 tangential_decompose failed: {e}"), payload()),
    };
    if !out.check(dec.len() == rank, || format!("k=3: {} terms, expected {rank}", dec.len()), payload) {
        return;
    }
    for _ in 0..4 {
        let x: Vec<Vec<Rational>> = dims.iter().map(|&n| random::small_vector(rng, n + 1, cfg.coord_bound)).collect();
        let direct = eval_tangent(&j, &x);
        if !out.check(direct.as_ref().ok() == Some(&dec.eval(&x)), || "k=3 decomposition disagrees with the tangent value".into(), payload) {
            return;
        }
    }
    out.count("jets_k3", 1);
}

/// Projective parameter of `x` on the line through `v` and `w`.
fn param_on(v: &[Rational], w: &[Rational], x: &[Rational]) -> Option<ProjPoint> {
    let line = LineEmbed::new(v.to_vec(), w.to_vec()).ok()?;
    let st = line.param_of(x)?;
    ProjPoint::new(st.to_vec()).ok()
}

/// Both decompositions of jets moving in both factors: terms of the smooth
/// one share their curve parameter across factors, the reducible one splits
/// `d1 + d2` and both recombine to the same form.
pub fn thm_i2(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let shapes = tangent_shapes(cfg, "thm-i2")?;
    let per = cfg.trials.unwrap_or(100usize.div_ceil(shapes.len()));
    Ok(run_over_shapes("thm-i2", cfg, shapes, per, BTreeMap::new(), |shape, rng, out| {
        let j = random_jet(rng, &[shape.n1, shape.n2], &[shape.d1, shape.d2], 0, cfg.coord_bound);
        let payload = || jet_payload(&j);
        let rank = shape.d1 + shape.d2;
        let (dec, red) = match (tangential_decompose(&j), reducible_decompose(&j)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return out.fail(format!("decomposition failed: {e}"), payload()),
        };
        if let Err(e) = check_terms(&j, &dec, rank) {
            return out.fail(format!("smooth: {e}"), payload());
        }
        if let Err(e) = check_terms(&j, &red, rank).and_then(|_| check_reducible(&j, &red)) {
            return out.fail(format!("reducible: {e}"), payload());
        }
        let same = dec.to_biform(&j).ok() == red.to_biform(&j).ok();
        if !out.check(same, || "the two decompositions give different forms".into(), payload) {
            return;
        }
        let (v, w) = (j.base(), j.dir());
        for (_, pts) in &dec.terms {
            let a = param_on(&v[0], &w[0], pts[0].coords());
            let b = param_on(&v[1], &w[1], pts[1].coords());
            if !out.check(a.is_some() && a == b, || "smooth term off the (1,1)-curve".into(), payload) {
                return;
            }
        }
        out.count("jets", 1);
        out.count("smooth_terms", dec.len() as u64);
        out.count("reducible_terms", red.len() as u64);
    }))
}
