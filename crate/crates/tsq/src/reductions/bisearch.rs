use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::rng::{self, Rng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Above,
    Below,
}

/// Threshold oracle: must answer `Above` when the entropy is at least
/// `t + margin` and `Below` when it is at most `t − margin`; in between either
/// answer is allowed.
pub trait EntropyDecider {
    fn decide(&mut self, t: f64, margin: f64) -> Result<Decision>;
}

impl<F: FnMut(f64, f64) -> Result<Decision>> EntropyDecider for F {
    fn decide(&mut self, t: f64, margin: f64) -> Result<Decision> {
        self(t, margin)
    }
}

/// How an [`ExactDecider`] answers inside the ambiguous band.
#[derive(Debug, Clone)]
pub enum GapPolicy {
    Above,
    Below,
    /// Compares against `t` itself.
    Nearest,
    Random(Rng),
}

impl GapPolicy {
    pub fn random(seed: u64) -> Self {
        GapPolicy::Random(rng::seeded(seed))
    }
}

/// Answers from a known entropy value.
#[derive(Debug, Clone)]
pub struct ExactDecider {
    pub value: f64,
    pub policy: GapPolicy,
    pub calls: usize,
}

impl ExactDecider {
    pub fn new(value: f64, policy: GapPolicy) -> Self {
        ExactDecider { value, policy, calls: 0 }
    }
}

impl EntropyDecider for ExactDecider {
    fn decide(&mut self, t: f64, margin: f64) -> Result<Decision> {
        self.calls += 1;
        let s = self.value;
        Ok(if s >= t + margin {
            Decision::Above
        } else if s <= t - margin {
            Decision::Below
        } else {
            match &mut self.policy {
                GapPolicy::Above => Decision::Above,
                GapPolicy::Below => Decision::Below,
                GapPolicy::Nearest if s >= t => Decision::Above,
                GapPolicy::Nearest => Decision::Below,
                GapPolicy::Random(r) => {
                    if r.random_bool(0.5) {
                        Decision::Above
                    } else {
                        Decision::Below
                    }
                }
            }
        })
    }
}

/// Wraps a decider and rejects any answer that contradicts an earlier one,
/// across as many searches as it is reused for.
#[derive(Debug, Clone)]
pub struct Checked<D> {
    pub inner: D,
    /// Entropy bounds implied by the answers so far.
    pub lower: f64,
    pub upper: f64,
}

impl<D> Checked<D> {
    pub fn new(inner: D) -> Self {
        Checked { inner, lower: f64::NEG_INFINITY, upper: f64::INFINITY }
    }
}

impl<D: EntropyDecider> EntropyDecider for Checked<D> {
    fn decide(&mut self, t: f64, margin: f64) -> Result<Decision> {
        let d = self.inner.decide(t, margin)?;
        match d {
            Decision::Above => self.lower = self.lower.max(t - margin),
            Decision::Below => self.upper = self.upper.min(t + margin),
        }
        if self.lower >= self.upper {
            return Err(Error::Oracle(format!(
                "answers put the entropy above {} and below {}",
                self.lower, self.upper
            )));
        }
        Ok(d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Query {
    pub t: f64,
    pub margin: f64,
    pub decision: Decision,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiSearchOutcome {
    pub estimate: f64,
    pub calls: usize,
    pub queries: Vec<Query>,
}

/// `⌈log₂(2τ/g)⌉ + 2`.
pub fn call_bound(tau: f64, g: f64) -> usize {
    (2.0 * tau / g).log2().ceil().max(0.0) as usize + 2
}

/// Estimates an entropy in `[0, τ]` to within `g/2` from threshold decisions
/// at margin `g/8`. The interval shrinks as `L ↦ L/2 + g/4` and the loop stops
/// once `L ≤ g`.
pub fn bisearch(decider: &mut impl EntropyDecider, tau: f64, g: f64) -> Result<BiSearchOutcome> {
    if !(tau > 0.0 && tau.is_finite()) || !(g > 0.0 && g.is_finite()) {
        return invalid(format!("need tau > 0 and g > 0, got tau = {tau}, g = {g}"));
    }
    let margin = g / 8.0;
    let (mut a, mut b) = (0.0f64, tau);
    let mut queries = Vec::new();
    let limit = call_bound(tau, g) + 64;
    while b - a > g {
        if queries.len() >= limit {
            return Err(Error::Numerical(format!("no convergence after {limit} queries")));
        }
        let m = 0.5 * (a + b);
        let decision = decider.decide(m, margin)?;
        queries.push(Query { t: m, margin, decision });
        match decision {
            Decision::Above => a = m - g / 4.0,
            Decision::Below => b = m + g / 4.0,
        }
    }
    Ok(BiSearchOutcome { estimate: 0.5 * (a + b), calls: queries.len(), queries })
}
