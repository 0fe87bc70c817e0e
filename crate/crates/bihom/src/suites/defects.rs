//! Hilbert-defect thresholds of finite point sets.

use std::collections::BTreeMap;

use bihom_core::forms::{FactorMap, LineEmbed, LineKind, PointPair, Shape};
use bihom_core::random::{self, TrialRng};
use bihom_core::structure::{check_rho_prime, hilbert_defect};
use bihom_core::CurveG;
use serde_json::Value;

use super::{distinct_params, points_payload, random_slice, run_over_shapes, shapes_or, SuiteConfig, SuiteError};
use crate::report::{TrialOutcome, VerificationReport};

const SUCK_SHAPES: &[(usize, usize, usize, usize)] = &[
    (1, 1, 1, 1),
    (1, 1, 2, 3),
    (2, 1, 3, 2),
    (2, 2, 2, 2),
    (2, 2, 3, 4),
    (1, 2, 4, 2),
    (3, 1, 2, 5),
    (1, 3, 3, 3),
    (2, 3, 2, 3),
    (3, 3, 3, 3),
];

const B5_SHAPES: &[(usize, usize, usize, usize)] = &[(1, 1, 2, 3), (2, 2, 3, 4), (1, 2, 2, 5), (2, 1, 4, 2)];

const B3_SHAPES: &[(usize, usize, usize, usize)] = &[(1, 1, 1, 1), (1, 1, 2, 3), (1, 1, 3, 3), (1, 1, 4, 2)];

fn defect(shape: &Shape, pts: &[PointPair], out: &mut TrialOutcome) -> Option<usize> {
    match hilbert_defect(pts, shape) {
        Ok(d) => Some(d),
        Err(e) => {
            out.fail(format!("defect computation failed: {e}"), points_payload(shape, pts));
            None
        }
    }
}

/// Any `1 + min(d1, d2)` points have independent lifts, and
/// `min(d1, d2) + 2` points on a line of the low-degree factor do not.
pub fn lemma_suck(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let shapes = shapes_or(cfg, SUCK_SHAPES);
    let bound = cfg.coord_bound;
    Ok(run_over_shapes("lemma-suck", cfg, shapes, cfg.trials.unwrap_or(200), BTreeMap::new(), |shape, rng, out| {
        let m = shape.min_degree();
        let z = random::distinct_point_pairs(rng, shape, m + 1, bound);
        let Some(dz) = defect(shape, &z, out) else { return };
        if !out.check(dz == 0 && check_rho_prime(shape, &z), || format!("{} random points have defect {dz}", m + 1), || {
            points_payload(shape, &z)
        }) {
            return;
        }
        out.count("random_sets_independent", 1);
        let kind = if shape.d1 <= shape.d2 { LineKind::Alpha } else { LineKind::Beta };
        if shape.factor(kind.moving_factor()).0 == 0 {
            out.count("line_configurations_skipped", 1);
            return;
        }
        let slice = random_slice(rng, shape, kind, bound);
        let pts: Vec<PointPair> =
            distinct_params(rng, m + 2, bound).iter().map(|t| slice.point_at(&t.coords()[0], &t.coords()[1])).collect();
        let Some(dl) = defect(shape, &pts, out) else { return };
        if out.check(dl == 1 && !check_rho_prime(shape, &pts), || format!("{} points on a line have defect {dl}", m + 2), || {
            points_payload(shape, &pts)
        }) {
            out.count("line_configurations_defect_one", 1);
        }
    }))
}

/// On a beta-line (and symmetrically an alpha-line), `|Z|` points have
/// defect `max(0, |Z| - d - 1)`, `d` the degree of the moving factor.
pub fn remark_b5(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let shapes = shapes_or(cfg, B5_SHAPES);
    let bound = cfg.coord_bound;
    Ok(run_over_shapes("remark-b5", cfg, shapes, cfg.trials.unwrap_or(100), BTreeMap::new(), |shape, rng, out| {
        for kind in [LineKind::Beta, LineKind::Alpha] {
            if shape.factor(kind.moving_factor()).0 == 0 {
                out.count("lines_skipped", 1);
                continue;
            }
            let d = kind.degree(shape);
            let slice = random_slice(rng, shape, kind, bound);
            let pts: Vec<PointPair> = distinct_params(rng, d + 4, bound)
                .iter()
                .map(|t| slice.point_at(&t.coords()[0], &t.coords()[1]))
                .collect();
            for m in 1..=d + 4 {
                let z = &pts[..m];
                let Some(dz) = defect(shape, z, out) else { return };
                let want = m.saturating_sub(d + 1);
                if !out.check(dz == want, || format!("{m} points on a {} line: defect {dz}, expected {want}", kind.name()), || {
                    points_payload(shape, z)
                }) {
                    return;
                }
                out.count(&format!("{}_sets_checked", kind.name()), 1);
            }
        }
    }))
}

/// A smooth curve of bidegree `(1,1)`: `d1 + d2 + 1` of its points are
/// independent, `d1 + d2 + 2` are not.
pub fn lemma_b3(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let shapes = shapes_or(cfg, B3_SHAPES);
    if let Some(s) = shapes.iter().find(|s| s.n1 == 0 || s.n2 == 0) {
        return Err(SuiteError::BadShape {
            suite: "lemma-b3".into(),
            shape: *s,
            reason: "both factors must have dimension at least 1".into(),
        });
    }
    let bound = cfg.coord_bound;
    Ok(run_over_shapes("lemma-b3", cfg, shapes, cfg.trials.unwrap_or(100), BTreeMap::new(), |shape, rng, out| {
        let g = random_curve(rng, shape, bound);
        let total = shape.d1 + shape.d2;
        let pts: Vec<PointPair> = distinct_params(rng, total + 2, bound)
            .iter()
            .filter_map(|t| {
                let x = g.point(&t.coords()[0], &t.coords()[1]);
                PointPair::new(x[0].clone(), x[1].clone()).ok()
            })
            .collect();
        if !out.check(pts.len() == total + 2, || "curve point vanished".into(), || Value::Null) {
            return;
        }
        let Some(lo) = defect(shape, &pts[..total + 1], out) else { return };
        if !out.check(lo == 0, || format!("{} curve points have defect {lo}", total + 1), || {
            points_payload(shape, &pts[..total + 1])
        }) {
            return;
        }
        let Some(hi) = defect(shape, &pts, out) else { return };
        if out.check(hi >= 1, || format!("{} curve points have defect 0", total + 2), || points_payload(shape, &pts)) {
            out.count("curves_checked", 1);
            out.count(&format!("defect_{hi}_at_threshold"), 1);
        }
    }))
}

fn random_curve(rng: &mut TrialRng, shape: &Shape, bound: i64) -> CurveG {
    let mut line = |n: usize| loop {
        let a = random::small_vector(rng, n + 1, bound);
        let b = random::small_vector(rng, n + 1, bound);
        if let Ok(l) = LineEmbed::new(a, b) {
            return FactorMap::Line(l);
        }
    };
    let f1 = line(shape.n1);
    let f2 = line(shape.n2);
    CurveG::new(vec![f1, f2]).expect("both factors move")
}
