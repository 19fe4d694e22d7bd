//! Classical Tsallis quantities on probability vectors.
//!
//! Power sums are evaluated through `p·expm1((q−1)·ln p)` so that values stay
//! accurate as `q → 1`, where the naive `(1 − Σp^q)/(q − 1)` cancels.

use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Result};

/// Below this distance from 1 the Shannon limit is used.
pub const SHANNON_BRANCH: f64 = 1e-9;
const SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return invalid("a distribution needs at least one outcome");
        }
        if let Some(p) = probs.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return invalid(format!("probabilities must be finite and non-negative, got {p}"));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return invalid(format!("probabilities sum to {total}, not 1"));
        }
        Ok(Distribution { probs })
    }

    pub(crate) fn from_vec_unchecked(probs: Vec<f64>) -> Self {
        Distribution { probs }
    }

    pub fn uniform(n: usize) -> Self {
        Distribution { probs: vec![1.0 / n as f64; n] }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.probs
    }
}

pub fn q_log(x: f64, q: f64) -> Result<f64> {
    if !(x > 0.0) {
        return domain(format!("ln_q needs x > 0, got {x}"));
    }
    Ok(q_log_unchecked(x, q))
}

pub(crate) fn q_log_unchecked(x: f64, q: f64) -> f64 {
    if (q - 1.0).abs() < SHANNON_BRANCH {
        x.ln()
    } else {
        -((1.0 - q) * x.ln()).exp_m1() / (q - 1.0)
    }
}

fn term(p: f64, q: f64) -> f64 {
    if p <= 0.0 {
        return 0.0;
    }
    if (q - 1.0).abs() < SHANNON_BRANCH {
        -p * p.ln()
    } else {
        -p * ((q - 1.0) * p.ln()).exp_m1() / (q - 1.0)
    }
}

/// `H_q` of a non-negative vector assumed to sum to one.
pub(crate) fn tsallis_of_slice(probs: &[f64], q: f64) -> f64 {
    probs.iter().map(|&p| term(p, q)).sum()
}

pub fn tsallis_entropy(p: &Distribution, q: f64) -> Result<f64> {
    if !(q > 0.0) {
        return domain(format!("Tsallis entropy needs q > 0, got {q}"));
    }
    Ok(tsallis_of_slice(&p.probs, q))
}

/// `H_q(x) = H_q((x, 1 − x))`.
pub fn binary_entropy(x: f64, q: f64) -> f64 {
    term(x, q) + term(1.0 - x, q)
}

pub fn tv_distance(p0: &[f64], p1: &[f64]) -> Result<f64> {
    if p0.len() != p1.len() {
        return invalid("distributions have different supports");
    }
    Ok(0.5 * p0.iter().zip(p1).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

/// Classical Jensen-Tsallis divergence `H_q((p₀+p₁)/2) − (H_q(p₀) + H_q(p₁))/2`.
pub fn jt_divergence(p0: &Distribution, p1: &Distribution, q: f64) -> Result<f64> {
    if p0.len() != p1.len() {
        return invalid("distributions have different supports");
    }
    if !(q > 0.0) {
        return domain(format!("q must be positive, got {q}"));
    }
    let mid: Vec<f64> = p0.probs.iter().zip(&p1.probs).map(|(a, b)| 0.5 * (a + b)).collect();
    Ok(tsallis_of_slice(&mid, q) - 0.5 * (tsallis_of_slice(&p0.probs, q) + tsallis_of_slice(&p1.probs, q)))
}
