//! Generated instances with two minimal decompositions: recovery of the
//! special line, `E` and `b`, extension by fresh decompositions of `Q`, and
//! pairwise agreement across many decompositions.

use std::collections::BTreeMap;

use bihom_core::forms::{line_span_vector, LineKind, PointPair, ProjPoint, Shape};
use bihom_core::random;
use bihom_core::structure::{
    analyze_pair, extend_witness, generate_instance, hypothesis_a, hypothesis_b, unique_q, verify_ee7, Instance,
    SplitDecomposition, WitnessDecomposition,
};
use bihom_core::sylvester::{self, BinaryWitness};
use rand::Rng;
use serde_json::{json, Value};

use super::{SuiteConfig, SuiteError};
use crate::json;
use crate::report::{run_trials, SuiteMeta, TrialOutcome, VerificationReport};

/// One instance family: shape, line kind, border rank of `Q` and `|E|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Family {
    pub shape: Shape,
    pub kind: LineKind,
    pub b: usize,
    pub e: usize,
}

impl Family {
    pub fn rank(&self) -> usize {
        self.e + self.kind.degree(&self.shape) + 2 - self.b
    }

    fn label(&self) -> String {
        format!("{} {} b={} E={}", self.shape, json::kind_name(self.kind), self.b, self.e)
    }
}

/// Families covering both hypotheses, both line kinds, every `b` from 2 to
/// `(d + 2) / 2` on odd-degree slices and `|E|` from 0 to 2.
pub fn default_families() -> Vec<Family> {
    let f = |s: (usize, usize, usize, usize), kind, b, e| Family {
        shape: Shape::new(s.0, s.1, s.2, s.3).expect("valid"),
        kind,
        b,
        e,
    };
    vec![
        f((1, 1, 4, 4), LineKind::Beta, 2, 0),
        f((2, 2, 5, 5), LineKind::Beta, 2, 0),
        f((2, 2, 5, 5), LineKind::Beta, 3, 1),
        f((1, 2, 5, 4), LineKind::Alpha, 2, 0),
        f((1, 2, 5, 4), LineKind::Alpha, 3, 1),
        f((1, 1, 6, 5), LineKind::Beta, 3, 2),
        f((2, 1, 5, 6), LineKind::Alpha, 3, 2),
        f((1, 1, 6, 3), LineKind::Beta, 2, 0),
    ]
}

/// Feasible families on one shape. The case `b = (d + 2) / 2` (even `d`)
/// is left out: its decompositions form a pencil whose rational members
/// cannot be sampled.
pub fn families_for(shape: &Shape) -> Vec<Family> {
    let mut out = Vec::new();
    for kind in [LineKind::Beta, LineKind::Alpha] {
        if shape.factor(kind.moving_factor()).0 == 0 {
            continue;
        }
        let d = kind.degree(shape);
        for b in 2..=(d + 2) / 2 {
            if 2 * b == d + 2 {
                continue;
            }
            for e in 0..=2 {
                let fam = Family { shape: *shape, kind, b, e };
                let r = fam.rank();
                if hypothesis_a(shape, r) || hypothesis_b(shape, r) {
                    out.push(fam);
                }
            }
        }
    }
    out
}

fn families(cfg: &SuiteConfig, suite: &str) -> Result<Vec<Family>, SuiteError> {
    match cfg.shape {
        None => Ok(default_families()),
        Some(shape) => {
            let f = families_for(&shape);
            if f.is_empty() {
                return Err(SuiteError::BadShape {
                    suite: suite.into(),
                    shape,
                    reason: "no line kind, b and |E| satisfy the hypotheses".into(),
                });
            }
            Ok(f)
        }
    }
}

/// The instance for trial `t`: family `t / per_family`, generator seed
/// drawn from the trial stream.
fn trial_instance(cfg: &SuiteConfig, fam: &Family, t: usize, out: &mut TrialOutcome) -> Option<Instance> {
    let seed = random::trial_rng(cfg.seed, t as u64).gen::<u64>();
    match generate_instance(&fam.shape, fam.kind, fam.b, fam.e, seed, cfg.coord_bound) {
        Ok(inst) => Some(inst),
        Err(e) => {
            out.fail(
                format!("generation failed: {e}"),
                json!({
                    "shape": fam.shape.to_string(), "kind": json::kind_name(fam.kind),
                    "b": fam.b, "e": fam.e, "seed": seed, "coord_bound": cfg.coord_bound,
                }),
            );
            None
        }
    }
}

fn family_meta(suite: &str, cfg: &SuiteConfig, fams: &[Family], per_family: usize, mut params: BTreeMap<String, Value>) -> SuiteMeta {
    params.insert("instances_per_family".into(), Value::from(per_family));
    params.insert("families".into(), Value::from(fams.iter().map(Family::label).collect::<Vec<_>>()));
    let mut shapes: Vec<String> = fams.iter().map(|f| f.shape.to_string()).collect();
    shapes.dedup();
    SuiteMeta { suite: suite.into(), seed: cfg.seed, coord_bound: cfg.coord_bound, shapes, params }
}

/// The line part of `w` as a weighted decomposition of `split.q_form`.
pub fn line_witness(split: &SplitDecomposition, w: &WitnessDecomposition) -> Option<BinaryWitness> {
    let i = split.kind().moving_factor();
    let params: Vec<ProjPoint> = w
        .points()
        .iter()
        .filter(|pt| split.slice.contains(pt))
        .map(|pt| split.slice.line.param_of(pt.factor(i).coords()).and_then(|t| ProjPoint::new(t.to_vec()).ok()))
        .collect::<Option<_>>()?;
    sylvester::attach_weights(&split.q_form, &params)
}

/// `count` new decompositions `E ∪ M` of `p`, with `M` sampled from the
/// decompositions of `Q` other than the one inside `s`; any that coincide
/// with a decomposition in `exclude` are skipped.
pub fn extensions(
    split: &SplitDecomposition,
    s: &WitnessDecomposition,
    exclude: &[&WitnessDecomposition],
    count: usize,
    seed: u64,
) -> Result<Vec<WitnessDecomposition>, String> {
    let start = line_witness(split, s).ok_or("line part of S is not a decomposition of Q")?;
    let ms = sylvester::sample_solutions_from(&split.q_form, &start, count + exclude.len(), seed)
        .map_err(|e| e.to_string())?;
    let banned: Vec<Vec<PointPair>> = exclude.iter().map(|w| w.sorted_points()).collect();
    let mut out = Vec::with_capacity(count);
    for m in &ms {
        let w = extend_witness(split, m).map_err(|e| e.to_string())?;
        if !banned.contains(&w.sorted_points()) && out.len() < count {
            out.push(w);
        }
    }
    if out.len() < count {
        return Err(format!("only {} of {count} new decompositions found", out.len()));
    }
    Ok(out)
}

fn sorted(v: &[PointPair]) -> Vec<PointPair> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn hypothesis_label(shape: &Shape, r: usize) -> &'static str {
    match (hypothesis_a(shape, r), hypothesis_b(shape, r)) {
        (true, true) => "hypothesis_both",
        (true, false) => "hypothesis_a_only",
        (false, true) => "hypothesis_b_only",
        (false, false) => "hypothesis_none",
    }
}

/// Recovery of the planted structure and extension by fresh decompositions.
pub fn thm_ee11(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let fams = families(cfg, "thm-ee11")?;
    let per = cfg.trials.unwrap_or(7);
    let mut params = BTreeMap::new();
    params.insert("samples".into(), Value::from(cfg.samples));
    let meta = family_meta("thm-ee11", cfg, &fams, per, params);
    Ok(run_trials(meta, per * fams.len(), |t| {
        let fam = fams[t / per];
        let mut out = TrialOutcome::new(Some(fam.shape.to_string()));
        let Some(inst) = trial_instance(cfg, &fam, t, &mut out) else { return out };
        let payload = || serde_json::to_value(json::instance_json(&inst)).expect("serializes");
        let split = match analyze_pair(&inst.p, &inst.s, &inst.a) {
            Ok(s) => s,
            Err(e) => {
                out.fail(format!("analyze_pair failed: {e}"), payload());
                return out;
            }
        };
        let m = &inst.meta;
        let d = fam.kind.degree(&fam.shape);
        let recovered = split.kind() == fam.kind
            && split.slice.same_slice(&m.slice)
            && sorted(&split.slice.members) == sorted(&m.slice.members)
            && sorted(&split.e) == sorted(&m.e)
            && split.border_rank == m.b
            && split.e.len() + d + 2 == split.rank + split.border_rank;
        if !out.check(recovered, || format!("recovered {:?} b={} |E|={}", split.kind(), split.border_rank, split.e.len()), payload) {
            return out;
        }
        let planted = line_span_vector(&m.q_form, m.slice.kind, &m.slice.base, &m.slice.line, &fam.shape);
        if !out.check(planted.as_ref().ok() == Some(&split.q_vector), || "Q differs from the planted line vector".into(), payload) {
            return out;
        }
        let q = unique_q(&inst.p, &inst.s, &inst.a, &split.e);
        if !out.check(q.as_ref().ok() == Some(&split.q_vector), || format!("unique Q check failed: {q:?}"), payload) {
            return out;
        }
        out.count("instances", 1);
        out.count(&format!("kind_{}", json::kind_name(fam.kind)), 1);
        out.count(&format!("b_{}", fam.b), 1);
        out.count(&format!("e_{}", fam.e), 1);
        out.count(hypothesis_label(&fam.shape, split.rank), 1);

        let seed = random::trial_rng(cfg.seed, t as u64).gen::<u64>().wrapping_add(1);
        let ext = match extensions(&split, &inst.s, &[&inst.a], cfg.samples, seed) {
            Ok(x) => x,
            Err(e) => {
                out.fail(format!("extension failed: {e}"), payload());
                return out;
            }
        };
        let mut sets = vec![inst.s.sorted_points(), inst.a.sorted_points()];
        for w in &ext {
            let pts = w.sorted_points();
            let ok = w.len() == split.rank && w.evinces(&inst.p) && !sets.contains(&pts);
            if !out.check(ok, || "extension is not a new decomposition of p".into(), payload) {
                return out;
            }
            sets.push(pts);
        }
        out.count("extensions", ext.len() as u64);
        out
    }))
}

/// Every pair among `S`, `A` and `extra` extensions reports the same line,
/// `E` and `b`.
pub fn prop_ee7(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let fams = families(cfg, "prop-ee7")?;
    let per = cfg.trials.unwrap_or(7);
    let mut params = BTreeMap::new();
    params.insert("extra".into(), Value::from(cfg.extra));
    let meta = family_meta("prop-ee7", cfg, &fams, per, params);
    Ok(run_trials(meta, per * fams.len(), |t| {
        let fam = fams[t / per];
        let mut out = TrialOutcome::new(Some(fam.shape.to_string()));
        let Some(inst) = trial_instance(cfg, &fam, t, &mut out) else { return out };
        let payload = || serde_json::to_value(json::instance_json(&inst)).expect("serializes");
        let seed = random::trial_rng(cfg.seed, t as u64).gen::<u64>().wrapping_add(2);
        let witnesses = analyze_pair(&inst.p, &inst.s, &inst.a)
            .map_err(|e| e.to_string())
            .and_then(|split| extensions(&split, &inst.s, &[&inst.a], cfg.extra, seed));
        let mut all = vec![inst.s.clone(), inst.a.clone()];
        match witnesses {
            Ok(x) => all.extend(x),
            Err(e) => {
                out.fail(format!("could not build extra witnesses: {e}"), payload());
                return out;
            }
        }
        match verify_ee7(&inst.p, &all) {
            Ok(r) if r.pass => {
                out.count("instances", 1);
                out.count("witnesses", all.len() as u64);
                out.count("pairs", r.pairs.len() as u64);
            }
            Ok(r) => {
                let bad: Vec<String> =
                    r.pairs.iter().filter(|p| !p.agrees).map(|p| format!("({},{}): {:?}", p.i, p.j, p.error)).collect();
                out.fail(format!("pairs disagree: {}", bad.join("; ")), payload());
            }
            Err(e) => out.fail(format!("verify_ee7 failed: {e}"), payload()),
        }
        out
    }))
}
