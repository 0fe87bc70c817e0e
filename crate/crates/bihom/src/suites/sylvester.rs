//! Binary forms with planted decompositions, and `s^(d-1) t`.

use std::collections::BTreeMap;

use bihom_core::algebra::rational::Rational;
use bihom_core::forms::{BinaryForm, ProjPoint};
use bihom_core::random;
use bihom_core::sylvester::{analyze, catalecticant, is_witness};
use num_traits::Zero;
use rand::Rng;
use serde_json::Value;

use super::{distinct_params, SuiteConfig, SuiteError};
use crate::json;
use crate::report::{run_trials, SuiteMeta, TrialOutcome, VerificationReport};

const MAX_DEGREE: usize = 10;

/// `prod (y_i s - x_i t)`, vanishing at every planted point.
fn apolar_product(points: &[ProjPoint]) -> BinaryForm {
    let linear = |p: &ProjPoint| BinaryForm::new(vec![p.coords()[1].clone(), -&p.coords()[0]]).expect("nonzero");
    points[1..].iter().fold(linear(&points[0]), |acc, p| acc.mul(&linear(p)))
}

/// Degree `2 + t mod 9`; `r` up to `(d + 2) / 2` planted points. For
/// `2r <= d + 1` the point set is recovered exactly. For `2r = d + 2` the
/// decompositions form a pencil, so the check is that the planted apolar
/// form lies in `ker Cat_r` and the returned witness is valid.
pub fn sylvester(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    if cfg.shape.is_some() {
        return Err(SuiteError::BadParameter("the sylvester suite takes no --shape".into()));
    }
    let trials = cfg.trials.unwrap_or(200);
    let mut params = BTreeMap::new();
    params.insert("degrees".into(), Value::from(format!("2..={MAX_DEGREE}")));
    let meta = SuiteMeta { suite: "sylvester".into(), seed: cfg.seed, coord_bound: cfg.coord_bound, shapes: Vec::new(), params };
    Ok(run_trials(meta, trials, |t| {
        let d = 2 + t % (MAX_DEGREE - 1);
        let mut rng = random::trial_rng(cfg.seed, t as u64);
        let mut out = TrialOutcome::new(None);
        let r = rng.gen_range(1..=(d + 2) / 2);
        let mut planted: Vec<ProjPoint> = distinct_params(&mut rng, r, cfg.coord_bound);
        planted.sort();
        let terms: Vec<(Rational, ProjPoint)> =
            planted.iter().map(|p| (random::nonzero_int(&mut rng, cfg.coord_bound), p.clone())).collect();
        let q = BinaryForm::combine(d, &terms);
        let payload = || serde_json::json!({
            "q": json::binary_form_json(&q),
            "planted": planted.iter().map(|p| json::nums(p.coords())).collect::<Vec<_>>(),
        });
        let res = match analyze(&q) {
            Ok(res) => res,
            Err(e) => return { out.fail(format!("analyze failed: {e}"), payload()); out },
        };
        if !out.check((res.border_rank, res.rank) == (r, r), || format!("(b, r) = ({}, {}), planted {r}", res.border_rank, res.rank), payload) {
            return out;
        }
        let witness = res.witness.clone().unwrap_or_default();
        if !out.check(is_witness(&q, &witness, r), || "returned witness does not recombine".into(), payload) {
            return out;
        }
        if 2 * r <= d + 1 {
            let mut found: Vec<ProjPoint> = witness.iter().map(|(_, p)| p.clone()).collect();
            found.sort();
            if !out.check(found == planted, || "recovered point set differs from the planted one".into(), payload) {
                return out;
            }
            out.count("unique_recovered", 1);
        } else {
            let g = apolar_product(&planted);
            let cat = catalecticant(&q, r).expect("1 <= r <= d");
            if !out.check(cat.mul_vec(g.coeffs()).iter().all(Zero::is_zero), || "planted apolar form not in ker Cat_r".into(), payload) {
                return out;
            }
            out.count("pencil_checked", 1);
        }
        out.count(&format!("d_{d}"), 1);

        let tangent = BinaryForm::monomial(d, 1);
        let tq = || serde_json::json!({ "q": json::binary_form_json(&tangent) });
        match analyze(&tangent) {
            Ok(res) => {
                let ok = (res.border_rank, res.rank) == (2, d)
                    && res.witness.as_ref().is_some_and(|w| is_witness(&tangent, w, d));
                if out.check(ok, || format!("s^(d-1)t: (b, r) = ({}, {})", res.border_rank, res.rank), tq) {
                    out.count("tangent_forms", 1);
                }
            }
            Err(e) => out.fail(format!("analyze(s^(d-1)t) failed: {e}"), tq()),
        }
        out
    }))
}
