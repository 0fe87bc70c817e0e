//! Mutual exclusivity of qualifying alpha- and beta-line slices on small
//! point sets.

use std::collections::BTreeMap;

use bihom_core::forms::{LineEmbed, LineKind, PointPair, ProjPoint, Shape};
use bihom_core::random::{self, TrialRng};
use bihom_core::structure::{generate_instance, line_census, SpecialLine};
use rand::Rng;
use serde_json::Value;

use super::{distinct_params, points_payload, random_slice, SuiteConfig};
use crate::json;
use crate::report::{run_trials, SuiteMeta, TrialOutcome, VerificationReport};
use crate::suites::{default_families, families_for, SuiteError};

fn other(kind: LineKind) -> LineKind {
    match kind {
        LineKind::Alpha => LineKind::Beta,
        LineKind::Beta => LineKind::Alpha,
    }
}

/// `count` points of `slice` at distinct parameters other than `(1:0)`.
fn slice_points(rng: &mut TrialRng, slice: &SpecialLine, count: usize, bound: i64) -> Vec<PointPair> {
    let skip = ProjPoint::basis(1, 0);
    distinct_params(rng, count + 1, bound)
        .into_iter()
        .filter(|p| *p != skip)
        .take(count)
        .map(|p| slice.point_at(&p.coords()[0], &p.coords()[1]))
        .collect()
}

/// A `kind`-slice with `d + 2` points plus `extra` points on a slice of the
/// other kind through the first of them.
fn crossing_config(rng: &mut TrialRng, shape: &Shape, kind: LineKind, extra: usize, bound: i64) -> Vec<PointPair> {
    let slice = random_slice(rng, shape, kind, bound);
    let mut pts = slice_points(rng, &slice, kind.degree(shape) + 2, bound);
    let hub = pts[0].clone();
    let ok = other(kind);
    let i = ok.moving_factor();
    let through = loop {
        let b = random::small_vector(rng, hub.factor(i).coords().len(), bound);
        if let Ok(line) = LineEmbed::new(hub.factor(i).coords().to_vec(), b) {
            break SpecialLine { kind: ok, base: hub.factor(1 - i).clone(), line, members: Vec::new() };
        }
    };
    pts.extend(slice_points(rng, &through, extra, bound));
    pts
}

fn kinds_found(census: &[SpecialLine]) -> (bool, bool) {
    (
        census.iter().any(|l| l.kind == LineKind::Alpha),
        census.iter().any(|l| l.kind == LineKind::Beta),
    )
}

/// Generated `S ∪ A` sets of size at most `d1 + d2 + 1`, plus a crossing
/// configuration of the largest size allowed, never carry both kinds of
/// qualifying slice; a crossing configuration two points larger does.
pub fn usa3_01(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let fams = match cfg.shape {
        None => default_families(),
        Some(shape) => {
            let f = families_for(&shape);
            if f.is_empty() || shape.n1 == 0 || shape.n2 == 0 {
                return Err(SuiteError::BadShape {
                    suite: "usa3-01".into(),
                    shape,
                    reason: "needs n1, n2 >= 1 and a feasible instance family".into(),
                });
            }
            f
        }
    };
    let trials = cfg.trials.unwrap_or(100);
    let mut params = BTreeMap::new();
    params.insert("sets".into(), Value::from(trials));
    let mut shapes: Vec<String> = fams.iter().map(|f| f.shape.to_string()).collect();
    shapes.dedup();
    let meta = SuiteMeta { suite: "usa3-01".into(), seed: cfg.seed, coord_bound: cfg.coord_bound, shapes, params };
    Ok(run_trials(meta, trials, |t| {
        let fam = fams[t % fams.len()];
        let shape = fam.shape;
        let limit = shape.d1 + shape.d2 + 1;
        let mut rng = random::trial_rng(cfg.seed, t as u64);
        let mut out = TrialOutcome::new(Some(shape.to_string()));
        let seed = rng.gen::<u64>();
        let inst = match generate_instance(&shape, fam.kind, fam.b, fam.e, seed, cfg.coord_bound) {
            Ok(i) => i,
            Err(e) => {
                out.fail(
                    format!("generation failed: {e}"),
                    serde_json::json!({ "shape": shape.to_string(), "kind": json::kind_name(fam.kind), "b": fam.b, "e": fam.e, "seed": seed }),
                );
                return out;
            }
        };
        let mut union = inst.s.points();
        union.extend(inst.a.points());
        union.sort();
        union.dedup();
        if !out.check(union.len() <= limit, || format!("|S ∪ A| = {} exceeds {limit}", union.len()), || points_payload(&shape, &union)) {
            return out;
        }
        let census = line_census(&union, &shape);
        let (a, b) = kinds_found(&census);
        if !out.check(!(a && b), || "generated set has both alpha and beta slices".into(), || points_payload(&shape, &union)) {
            return out;
        }
        out.count("generated_sets", 1);
        out.count(&format!("planted_{}_found", json::kind_name(fam.kind)), u64::from(census.iter().any(|l| l.kind == fam.kind)));

        let kind = if t % 2 == 0 { LineKind::Beta } else { LineKind::Alpha };
        let d_other = other(kind).degree(&shape);
        let tight = crossing_config(&mut rng, &shape, kind, d_other - 1, cfg.coord_bound);
        let (a, b) = kinds_found(&line_census(&tight, &shape));
        if !out.check(tight.len() == limit && !(a && b), || "crossing set at the bound has both slices".into(), || points_payload(&shape, &tight)) {
            return out;
        }
        out.count("crossing_sets", 1);

        let sharp = crossing_config(&mut rng, &shape, kind, d_other + 1, cfg.coord_bound);
        let (a, b) = kinds_found(&line_census(&sharp, &shape));
        if out.check(sharp.len() == limit + 2 && a && b, || "sharpness control misses a slice".into(), || points_payload(&shape, &sharp)) {
            out.count("sharpness_controls", 1);
        }
        out
    }))
}
