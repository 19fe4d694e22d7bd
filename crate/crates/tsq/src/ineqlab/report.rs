use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Eigendecomposition-mediated inequalities.
pub const SPECTRAL_TOL: f64 = 1e-9;
/// Closed-form scalar identities and inequalities.
pub const CLOSED_FORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    /// Largest `lhs − rhs` over every asserted inequality; negative when all
    /// hold strictly.
    pub max_violation: f64,
    /// Replay record of the case attaining `max_violation`.
    pub worst_case: Value,
    pub tolerance: f64,
    /// Cases with a positive violation inside the tolerance.
    pub float_noise: usize,
    pub pass: bool,
    /// Names of the failing sub-suites, outermost merges last.
    #[serde(default)]
    pub failed_parts: Vec<String>,
}

impl SuiteReport {
    fn from_outcomes(suite: &str, tolerance: f64, outcomes: Vec<(f64, Value)>) -> SuiteReport {
        let cases = outcomes.len();
        let float_noise = outcomes.iter().filter(|(v, _)| *v > 0.0 && *v <= tolerance).count();
        let mut worst: Option<(f64, Value)> = None;
        for (v, inst) in outcomes {
            // Strictly greater keeps the lowest index among ties.
            if worst.as_ref().is_none_or(|(w, _)| v > *w || (v.is_nan() && !w.is_nan())) {
                worst = Some((v, inst));
            }
        }
        let (max_violation, worst_case) = worst.unwrap_or((f64::NEG_INFINITY, Value::Null));
        SuiteReport {
            suite: suite.to_string(),
            cases,
            max_violation,
            worst_case,
            tolerance,
            float_noise,
            pass: max_violation <= tolerance,
            failed_parts: if max_violation <= tolerance { vec![] } else { vec![suite.to_string()] },
        }
    }

    /// Merges reports of the same suite; case counts add up.
    pub fn merge(suite: &str, parts: Vec<SuiteReport>) -> SuiteReport {
        let tolerance = parts.iter().map(|p| p.tolerance).fold(0.0, f64::max);
        let cases = parts.iter().map(|p| p.cases).sum();
        let float_noise = parts.iter().map(|p| p.float_noise).sum();
        let pass = parts.iter().all(|p| p.pass);
        let failed_parts = parts.iter().flat_map(|p| p.failed_parts.iter().cloned()).collect();
        let mut worst: Option<SuiteReport> = None;
        for p in parts {
            // Margins are compared relative to each part's own tolerance.
            let key = |r: &SuiteReport| r.max_violation - r.tolerance;
            if worst.as_ref().is_none_or(|w| key(&p) > key(w)) {
                worst = Some(p);
            }
        }
        let w = worst.expect("at least one part");
        let mut case = w.worst_case;
        if let Value::Object(map) = &mut case {
            map.insert("part".into(), Value::String(w.suite));
        }
        SuiteReport {
            suite: suite.to_string(),
            cases,
            max_violation: w.max_violation,
            worst_case: case,
            tolerance,
            float_noise,
            pass,
            failed_parts,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Worker threads; 0 picks the machine default.
    pub jobs: usize,
}

/// Evaluates `case(i)` for `i < cases` on a pool of `opts.jobs` threads. The
/// result does not depend on scheduling.
pub(crate) fn run_cases<F>(suite: &str, tolerance: f64, cases: usize, opts: &SuiteOptions, case: F) -> Result<SuiteReport>
where
    F: Fn(usize) -> Result<(f64, Value)> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
    let outcomes = pool.install(|| (0..cases).into_par_iter().map(&case).collect::<Result<Vec<_>>>())?;
    Ok(SuiteReport::from_outcomes(suite, tolerance, outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn worst_case_is_first_maximum() {
        let r = SuiteReport::from_outcomes(
            "t",
            1e-9,
            vec![(-1.0, json!({"i": 0})), (5e-10, json!({"i": 1})), (5e-10, json!({"i": 2}))],
        );
        assert_eq!(r.worst_case, json!({"i": 1}));
        assert_eq!(r.float_noise, 2);
        assert!(r.pass);
    }

    #[test]
    fn jobs_do_not_change_results() {
        let f = |i: usize| Ok((((i * 7919) % 101) as f64 - 100.0, json!({ "i": i })));
        let a = run_cases("t", 0.0, 500, &SuiteOptions { seed: 0, jobs: 1 }, f).unwrap();
        let b = run_cases("t", 0.0, 500, &SuiteOptions { seed: 0, jobs: 3 }, f).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.max_violation, 0.0);
    }
}
