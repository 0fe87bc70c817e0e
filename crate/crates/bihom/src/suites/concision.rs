//! Essential subspaces of minimal decompositions and of tangent vectors.

use std::collections::BTreeMap;

use bihom_core::algebra::matrix;
use bihom_core::algebra::rational::Rational;
use bihom_core::forms::{combine, essential_subspaces, restrict_to_subspaces, BiForm, PointPair};
use bihom_core::random;
use bihom_core::tangential::{flattening_rank, tangent_form, tangential_decompose};
use rand::Rng;

use super::tangent::random_jet;
use super::{points_payload, run_over_shapes, shapes_or, SuiteConfig, SuiteError};
use crate::json;
use crate::report::{TrialOutcome, VerificationReport};

const CONCISION_SHAPES: &[(usize, usize, usize, usize)] =
    &[(1, 1, 2, 2), (2, 2, 2, 2), (3, 2, 2, 1), (2, 3, 1, 3), (3, 3, 2, 2)];

/// Checks that every point lies in the essential subspaces, the
/// subspaces are spanned by the points, and restricting is idempotent.
fn check_concise(p: &BiForm, pts: &[PointPair], exact_span: bool) -> Result<(), String> {
    let (w1, w2) = essential_subspaces(p).map_err(|e| e.to_string())?;
    for (i, w) in [&w1, &w2].into_iter().enumerate() {
        let n = p.shape().factor(i).0 + 1;
        for x in pts {
            if !matrix::span_contains(n, w, x.factor(i).coords()) {
                return Err(format!("a point lies outside W{}", i + 1));
            }
        }
        if exact_span {
            let span: Vec<Vec<Rational>> = pts.iter().map(|x| x.factor(i).coords().to_vec()).collect();
            if matrix::rank(n, &span) != w.len() {
                return Err(format!("W{} is smaller than the span of the points", i + 1));
            }
        }
    }
    let (f, _, _) = restrict_to_subspaces(p, &w1, &w2).map_err(|e| e.to_string())?;
    let (v1, v2) = essential_subspaces(&f).map_err(|e| e.to_string())?;
    if (v1.len(), v2.len()) != (w1.len(), w2.len()) || v1.len() != f.shape().n1 + 1 || v2.len() != f.shape().n2 + 1 {
        return Err("restricting to the essential subspaces is not idempotent".into());
    }
    Ok(())
}

/// Minimal decompositions (certified by flattening rank) and tangent
/// decompositions live in the essential subspaces of their form.
pub fn concision(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let shapes = shapes_or(cfg, CONCISION_SHAPES);
    let per = cfg.trials.unwrap_or(40);
    Ok(run_over_shapes("concision", cfg, shapes, per, BTreeMap::new(), |shape, rng, out| {
        let cap = shape.n1.min(shape.n2).max(1);
        let r = rng.gen_range(1..=cap);
        let pts = random::distinct_point_pairs(rng, shape, r, cfg.coord_bound);
        let terms: Vec<(Rational, PointPair)> =
            pts.iter().map(|x| (random::nonzero_int(rng, cfg.coord_bound), x.clone())).collect();
        let p = combine(shape, &terms).expect("shape matches");
        if flattening_rank(&p) == r {
            if let Err(e) = check_concise(&p, &pts, true) {
                return out.fail(e, points_payload(shape, &pts));
            }
            out.count("minimal_decompositions", 1);
        } else {
            out.count("skipped_not_certified_minimal", 1);
        }
        if shape.n1 == 0 || shape.n2 == 0 {
            return;
        }
        let mode = rng.gen_range(0..3);
        let j = random_jet(rng, &[shape.n1, shape.n2], &[shape.d1, shape.d2], mode, cfg.coord_bound);
        jet_concision(&j, out);
    }))
}

fn jet_concision(j: &bihom_core::tangential::JetK, out: &mut TrialOutcome) {
    let payload = || serde_json::to_value(json::jet_json(j)).expect("serializes");
    let (p, dec) = match (tangent_form(j), tangential_decompose(j)) {
        (Ok(p), Ok(d)) => (p, d),
        (Err(e), _) => return out.fail(format!("tangent_form failed: {e}"), payload()),
        (_, Err(e)) => return out.fail(format!("tangential_decompose failed: {e}"), payload()),
    };
    let pts: Vec<PointPair> = dec.point_pairs().unwrap_or_default().into_iter().map(|(_, x)| x).collect();
    if let Err(e) = check_concise(&p, &pts, false) {
        return out.fail(format!("jet: {e}"), payload());
    }
    let (w1, w2) = essential_subspaces(&p).expect("nonzero");
    for (i, w) in [w1, w2].iter().enumerate() {
        let n = j.base()[i].len();
        let line = [j.base()[i].clone(), j.dir()[i].clone()];
        if !w.iter().all(|x| matrix::span_contains(n, &line, x)) {
            return out.fail(format!("W{} is not inside the span of base point and direction", i + 1), payload());
        }
    }
    out.count("jets", 1);
}

