//! Verification reports and the parallel trial runner.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub trial: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    pub message: String,
    /// Enough input to rerun the failing case through the CLI.
    pub payload: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub coord_bound: i64,
    pub shapes: Vec<String>,
    pub params: BTreeMap<String, Value>,
    pub passed: usize,
    pub failures: Vec<Failure>,
    /// Counters summed over all trials.
    pub summary: BTreeMap<String, u64>,
    pub pass: bool,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    /// The report as JSON without the timing field, for reproducibility
    /// comparisons.
    pub fn without_timing(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("wall_time_ms");
        v
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

/// What one trial observed.
#[derive(Debug, Clone, Default)]
pub struct TrialOutcome {
    pub shape: Option<String>,
    pub counters: BTreeMap<String, u64>,
    pub failure: Option<(String, Value)>,
}

impl TrialOutcome {
    pub fn new(shape: Option<String>) -> Self {
        TrialOutcome { shape, ..Default::default() }
    }

    pub fn count(&mut self, key: &str, n: u64) {
        *self.counters.entry(key.to_string()).or_default() += n;
    }

    /// Records the first failure only.
    pub fn fail(&mut self, message: impl Into<String>, payload: Value) {
        if self.failure.is_none() {
            self.failure = Some((message.into(), payload));
        }
    }

    /// Fails with `message` unless `ok`.
    pub fn check(&mut self, ok: bool, message: impl FnOnce() -> String, payload: impl FnOnce() -> Value) -> bool {
        if !ok {
            self.fail(message(), payload());
        }
        ok
    }
}

pub struct SuiteMeta {
    pub suite: String,
    pub seed: u64,
    pub coord_bound: i64,
    pub shapes: Vec<String>,
    pub params: BTreeMap<String, Value>,
}

/// Runs `trials` independent trials in parallel and assembles the report;
/// failures come out ordered by trial index whatever the scheduling.
pub fn run_trials<F>(meta: SuiteMeta, trials: usize, f: F) -> VerificationReport
where
    F: Fn(usize) -> TrialOutcome + Sync,
{
    let start = Instant::now();
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|t| {
            panic::catch_unwind(AssertUnwindSafe(|| f(t))).unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "unknown panic".into());
                let mut o = TrialOutcome::default();
                o.fail(format!("panic: {msg}"), Value::Null);
                o
            })
        })
        .collect();
    let mut summary = BTreeMap::new();
    let mut failures = Vec::new();
    for (trial, o) in outcomes.into_iter().enumerate() {
        for (k, v) in o.counters {
            *summary.entry(k).or_default() += v;
        }
        if let Some((message, payload)) = o.failure {
            failures.push(Failure { trial, shape: o.shape, message, payload });
        }
    }
    VerificationReport {
        suite: meta.suite,
        seed: meta.seed,
        trials,
        coord_bound: meta.coord_bound,
        shapes: meta.shapes,
        params: meta.params,
        passed: trials - failures.len(),
        pass: failures.is_empty(),
        failures,
        summary,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta() -> SuiteMeta {
        SuiteMeta { suite: "t".into(), seed: 1, coord_bound: 10, shapes: vec![], params: BTreeMap::new() }
    }

    #[test]
    fn failures_sorted_and_counted() {
        let r = run_trials(meta(), 50, |t| {
            let mut o = TrialOutcome::new(None);
            o.count("seen", 1);
            if t % 7 == 3 {
                o.fail(format!("bad {t}"), Value::from(t));
            }
            o
        });
        assert_eq!(r.summary["seen"], 50);
        let idx: Vec<usize> = r.failures.iter().map(|f| f.trial).collect();
        assert_eq!(idx, vec![3, 10, 17, 24, 31, 38, 45]);
        assert_eq!(r.passed, 43);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn panics_become_failures() {
        let r = run_trials(meta(), 3, |t| {
            if t == 1 {
                panic!("boom");
            }
            TrialOutcome::default()
        });
        assert_eq!(r.failures.len(), 1);
        assert!(r.failures[0].message.contains("boom"));
        assert!(r.without_timing().get("wall_time_ms").is_none());
    }
}
