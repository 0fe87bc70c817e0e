//! Seeded verification suites, one per statement being checked. Trial `t`
//! draws all its randomness from `trial_rng(seed, t)`, so reports do not
//! depend on scheduling.

mod concision;
mod defects;
mod ee;
mod lines;
mod sylvester;
mod tangent;

use std::collections::BTreeMap;

use bihom_core::forms::{LineEmbed, LineKind, PointPair, ProjPoint, Shape};
use bihom_core::random::{self, TrialRng};
use bihom_core::structure::SpecialLine;
use serde_json::Value;

use crate::json;
use crate::report::{run_trials, SuiteMeta, TrialOutcome, VerificationReport};

pub use ee::{default_families, extensions, families_for, Family};

pub const SUITES: &[&str] = &[
    "lemma-suck",
    "remark-b5",
    "lemma-b3",
    "usa3-01",
    "thm-ee11",
    "prop-ee7",
    "thm-i1",
    "thm-i2",
    "concision",
    "sylvester",
];

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Trials per shape (or per family); `None` uses the suite default.
    pub trials: Option<usize>,
    /// Restricts the suite to one shape.
    pub shape: Option<Shape>,
    pub coord_bound: i64,
    /// Extra witnesses beyond `S` and `A` in `prop-ee7`.
    pub extra: usize,
    /// Fresh decompositions of `Q` per instance in `thm-ee11`.
    pub samples: usize,
    /// Random candidate sets per mixed jet in `thm-i1`.
    pub falsify: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            trials: None,
            shape: None,
            coord_bound: random::DEFAULT_COORD_BOUND,
            extra: 2,
            samples: 5,
            falsify: 500,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}; expected one of: {list}", list = SUITES.join(", "))]
    Unknown(String),
    #[error("suite {suite} cannot run on shape {shape}: {reason}")]
    BadShape { suite: String, shape: Shape, reason: String },
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    if cfg.coord_bound < 1 {
        return Err(SuiteError::BadParameter(format!("coordinate bound must be positive, got {}", cfg.coord_bound)));
    }
    match name {
        "lemma-suck" => defects::lemma_suck(cfg),
        "remark-b5" => defects::remark_b5(cfg),
        "lemma-b3" => defects::lemma_b3(cfg),
        "usa3-01" => lines::usa3_01(cfg),
        "thm-ee11" => ee::thm_ee11(cfg),
        "prop-ee7" => ee::prop_ee7(cfg),
        "thm-i1" => tangent::thm_i1(cfg),
        "thm-i2" => tangent::thm_i2(cfg),
        "concision" => concision::concision(cfg),
        "sylvester" => sylvester::sylvester(cfg),
        other => Err(SuiteError::Unknown(other.to_string())),
    }
}

/// Runs `per_shape` trials on each shape; trial `t` uses shape
/// `shapes[t / per_shape]`.
fn run_over_shapes<F>(
    suite: &str,
    cfg: &SuiteConfig,
    shapes: Vec<Shape>,
    per_shape: usize,
    mut params: BTreeMap<String, Value>,
    f: F,
) -> VerificationReport
where
    F: Fn(&Shape, &mut TrialRng, &mut TrialOutcome) + Sync,
{
    params.insert("trials_per_shape".into(), Value::from(per_shape));
    let meta = SuiteMeta {
        suite: suite.to_string(),
        seed: cfg.seed,
        coord_bound: cfg.coord_bound,
        shapes: shapes.iter().map(Shape::to_string).collect(),
        params,
    };
    run_trials(meta, per_shape * shapes.len(), |t| {
        let shape = shapes[t / per_shape];
        let mut rng = random::trial_rng(cfg.seed, t as u64);
        let mut out = TrialOutcome::new(Some(shape.to_string()));
        f(&shape, &mut rng, &mut out);
        out
    })
}

fn shapes_or(cfg: &SuiteConfig, defaults: &[(usize, usize, usize, usize)]) -> Vec<Shape> {
    match cfg.shape {
        Some(s) => vec![s],
        None => defaults.iter().map(|&(a, b, c, d)| Shape::new(a, b, c, d).expect("valid default shape")).collect(),
    }
}

/// A random line slice of the given kind; the moving factor needs `n >= 1`.
fn random_slice(rng: &mut TrialRng, shape: &Shape, kind: LineKind, bound: i64) -> SpecialLine {
    let (n, _) = shape.factor(kind.moving_factor());
    let (nb, _) = shape.factor(1 - kind.moving_factor());
    let base = random::small_point(rng, nb, bound);
    loop {
        let a = random::small_vector(rng, n + 1, bound);
        let b = random::small_vector(rng, n + 1, bound);
        if let Ok(line) = LineEmbed::new(a, b) {
            return SpecialLine { kind, base, line, members: Vec::new() };
        }
    }
}

/// `count` distinct points of `P^1`.
fn distinct_params(rng: &mut TrialRng, count: usize, bound: i64) -> Vec<ProjPoint> {
    let mut out: Vec<ProjPoint> = Vec::with_capacity(count);
    while out.len() < count {
        let p = random::small_point(rng, 1, bound.max(count as i64));
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn points_payload(shape: &Shape, pts: &[PointPair]) -> Value {
    serde_json::json!({
        "shape": shape.to_string(),
        "points": pts.iter().map(json::point_pair_json).collect::<Vec<_>>(),
    })
}
