//! Randomized promise instances for the reductions and the binary search.

use rand::Rng as _;
use serde_json::json;

use super::bisearch::{bisearch, call_bound, ExactDecider, GapPolicy};
use super::mixed::{mixed_state_reduce_states, MixedParams};
use super::pure::{pure_state_reduce, PureParams};
use super::qscmm::qscmm_check;
use super::ReductionOutput;
use crate::error::{Error, Result};
use crate::ineqlab::{run_cases, SuiteOptions, SuiteReport, CLOSED_FORM_TOL};
use crate::qcore::linalg::{CMat, CVec};
use crate::qcore::random::{complex_gaussian, random_density_with, random_pure, random_unitary};
use crate::qcore::{binary_entropy, DensityMatrix, PureState};
use crate::rng::{self, Rng};

pub const SOUNDNESS_TOL: f64 = 1e-9;

fn random_q(i: usize, rng: &mut Rng) -> f64 {
    match i % 10 {
        0 => 1.0,
        1 => 2.0,
        _ => rng.random_range(1.0..=2.0),
    }
}

/// A pure state at trace distance exactly `t` from `psi`.
fn pure_at_distance(psi: &PureState, t: f64, rng: &mut Rng) -> PureState {
    let a = psi.amplitudes();
    let mut phi = CVec::from_fn(a.len(), |_, _| complex_gaussian(rng));
    let proj = a.dotc(&phi);
    phi -= a * proj;
    let phi = phi.unscale(phi.norm());
    let v = a * num_complex::Complex64::new((1.0 - t * t).max(0.0).sqrt(), 0.0) + phi * num_complex::Complex64::new(t, 0.0);
    let norm = v.norm();
    PureState::new(v.unscale(norm)).expect("normalized")
}

fn outcome(out: &ReductionOutput, extra: serde_json::Value) -> Result<(f64, serde_json::Value)> {
    let slack = out.slack().ok_or_else(|| Error::Consistency("generated instance outside its promise".into()))?;
    let mut record = json!({
        "case": out.case,
        "q": out.q,
        "gap": out.gap,
        "difference": out.difference,
        "trace_distance": out.trace_distance,
        "solved_param": out.solved_param,
    });
    if let (Some(m), serde_json::Value::Object(e)) = (record.as_object_mut(), extra) {
        m.extend(e);
    }
    Ok((-slack, record))
}

/// Pure-state reduction on `instances` pairs, alternating yes and no.
pub fn pure_soundness_suite(instances: usize, opts: &SuiteOptions) -> Result<SuiteReport> {
    let seed = opts.seed;
    run_cases("pure-reduction", SOUNDNESS_TOL, instances, opts, |i| {
        let mut r = rng::stream(seed, i as u64);
        let n = r.random_range(1..=3);
        let q = random_q(i, &mut r);
        let alpha: f64 = if i % 7 == 0 { 1.0 } else { r.random_range(0.6..=1.0) };
        let beta_max = 1.0 - (1.0 - alpha * alpha).sqrt();
        let beta = if i % 11 == 0 { 0.0 } else { 0.9 * beta_max * r.random::<f64>() };
        let yes = i % 2 == 0;
        let t = if yes { alpha + (1.0 - alpha) * r.random::<f64>() } else { beta * r.random::<f64>() };
        let psi0 = random_pure(n, &mut r);
        let psi1 = pure_at_distance(&psi0, t, &mut r);
        let out = pure_state_reduce(&psi0, &psi1, &PureParams { q, alpha, beta })?;
        outcome(&out, json!({"seed": seed, "index": i, "qubits": n, "alpha": alpha, "beta": beta}))
    })
}

/// Component states of the mixed-state instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedEnsemble {
    /// Random ranks on orthogonal or nearby supports.
    General,
    /// Pure yes-instance components, so both input entropies vanish.
    PureYes,
}

/// Random state supported on the span of `cols` columns of `u`.
fn supported_state(u: &CMat, cols: &[usize], rank: usize, rng: &mut Rng) -> Result<DensityMatrix> {
    let k = cols.len();
    let g = CMat::from_fn(k, rank, |_, _| complex_gaussian(rng));
    let w = &g * g.adjoint();
    let tr = w.trace().re;
    let basis = CMat::from_fn(u.nrows(), k, |r, c| u[(r, cols[c])]);
    DensityMatrix::new(&basis * w.unscale(tr) * basis.adjoint())
}

pub fn mixed_soundness_suite(instances: usize, ensemble: MixedEnsemble, opts: &SuiteOptions) -> Result<SuiteReport> {
    let seed = opts.seed;
    let name = match ensemble {
        MixedEnsemble::General => "mixed-reduction",
        MixedEnsemble::PureYes => "mixed-reduction-pure-yes",
    };
    run_cases(name, SOUNDNESS_TOL, instances, opts, |i| {
        let mut r = rng::stream(seed, i as u64);
        let n = r.random_range(1..=3);
        let d = 1usize << n;
        let q = random_q(i, &mut r);
        let eps: f64 = if i % 3 == 0 { 0.0 } else { r.random_range(0.0..0.05) };
        let yes = ensemble == MixedEnsemble::PureYes || i % 2 == 0;
        let u = random_unitary(d, &mut r);
        let (rho0, rho1) = if yes {
            let split = r.random_range(1..d);
            let (c0, c1): (Vec<usize>, Vec<usize>) = ((0..split).collect(), (split..d).collect());
            let (k0, k1) = match ensemble {
                MixedEnsemble::PureYes => (1, 1),
                MixedEnsemble::General => (r.random_range(1..=c0.len()), r.random_range(1..=c1.len())),
            };
            let a = supported_state(&u, &c0, k0, &mut r)?;
            let b = supported_state(&u, &c1, k1, &mut r)?;
            let s = eps * r.random::<f64>();
            let b = if ensemble == MixedEnsemble::PureYes { b } else { a.mix(&b, s)? };
            (a, b)
        } else {
            let rank = r.random_range(1..=d);
            let a = supported_state(&u, &(0..d).collect::<Vec<_>>(), rank, &mut r)?;
            let sigma = supported_state(&u, &(0..d).collect::<Vec<_>>(), r.random_range(1..=d), &mut r)?;
            let s = if i % 4 == 1 { 0.0 } else { eps * r.random::<f64>() };
            let b = sigma.mix(&a, s)?;
            (a, b)
        };
        let gamma = binary_entropy(0.5, q).max(rho0.tsallis(q)?).max(rho1.tsallis(q)?);
        let out = mixed_state_reduce_states(&rho0, &rho1, &MixedParams { q, gamma, eps })?;
        let entropies = json!([rho0.tsallis(q)?, rho1.tsallis(q)?]);
        outcome(&out, json!({"seed": seed, "index": i, "qubits": n, "gamma": gamma, "eps": eps, "entropies": entropies}))
    })
}

/// Threshold reduction on states near and far from maximally mixed, `n ∈ {5, 6, 7}`.
pub fn qscmm_suite(instances: usize, opts: &SuiteOptions) -> Result<SuiteReport> {
    let seed = opts.seed;
    run_cases("qscmm-reduction", SOUNDNESS_TOL, instances, opts, |i| {
        let mut r = rng::stream(seed, i as u64);
        let n = 5 + i % 3;
        let d = 1usize << n;
        let rho = if (i / 3) % 2 == 0 {
            let s = r.random::<f64>() / n as f64;
            let sigma = random_density_with(n, r.random_range(1..=d), &mut r)?;
            sigma.mix(&DensityMatrix::maximally_mixed(n), s)?
        } else {
            random_density_with(n, r.random_range(1..=d / n), &mut r)?
        };
        let c = qscmm_check(&rho)?;
        let slack = c.slack.ok_or_else(|| Error::Consistency("generated instance outside its promise".into()))?;
        Ok((-slack, json!({"seed": seed, "index": i, "n": n, "check": c})))
    })
}

/// BiSearch on a `(τ, g)` grid against exact deciders with random answers in
/// the ambiguous band; violation is the worse of the accuracy and call-count
/// excesses.
pub fn bisearch_suite(values_per_cell: usize, opts: &SuiteOptions) -> Result<SuiteReport> {
    let taus = [0.5, 1.0, 2.0, 5.0];
    let gs = [0.2, 0.1, 0.05, 0.01, 0.001];
    let cells = taus.len() * gs.len();
    let seed = opts.seed;
    run_cases("bisearch", CLOSED_FORM_TOL, cells * values_per_cell, opts, |i| {
        let (cell, k) = (i / values_per_cell, i % values_per_cell);
        let (tau, g) = (taus[cell / gs.len()], gs[cell % gs.len()]);
        let mut r = rng::stream(seed, i as u64);
        let s = match k {
            0 => 0.0,
            1 => tau,
            _ => tau * r.random::<f64>(),
        };
        let mut d = ExactDecider::new(s, GapPolicy::Random(rng::stream(seed ^ 0xb15, i as u64)));
        let out = bisearch(&mut d, tau, g)?;
        let bound = call_bound(tau, g);
        let v = ((out.estimate - s).abs() - g / 2.0).max(out.calls as f64 - bound as f64);
        Ok((v, json!({"seed": seed, "index": i, "tau": tau, "g": g, "value": s, "estimate": out.estimate, "calls": out.calls, "bound": bound})))
    })
}
