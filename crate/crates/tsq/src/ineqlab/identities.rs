//! Structural identities and the Fannes-type continuity bound.

use rand::Rng as _;
use serde_json::json;

use super::report::{run_cases, SuiteOptions, SuiteReport};
use super::suites::{random_pair, PairKind};
use crate::error::{invalid, Result};
use crate::qcore::entropy::q_log_unchecked;
use crate::qcore::linalg::CMat;
use crate::qcore::random::{random_density_any_rank, random_distribution, random_pure};
use crate::qcore::{
    binary_entropy, jt_divergence, qjt_divergence, trace_distance, tsallis_entropy, DensityMatrix, Distribution,
    PureState,
};
use crate::rng;

pub const IDENTITY_TOL: f64 = 1e-10;

/// `|S_q(ρ₀⊗ρ₁) − (S_q(ρ₀) + S_q(ρ₁) − (q−1)S_q(ρ₀)S_q(ρ₁))|`.
pub fn pseudo_additivity_defect(rho0: &DensityMatrix, rho1: &DensityMatrix, q: f64) -> Result<f64> {
    let (s0, s1) = (rho0.tsallis(q)?, rho1.tsallis(q)?);
    let joint = rho0.tensor(rho1).tsallis(q)?;
    Ok((joint - (s0 + s1 - (q - 1.0) * s0 * s1)).abs())
}

/// `|S_q(Σ μ_i|i⟩⟨i| ⊗ ρ_i) − H_q(μ) − Σ μ_i^q S_q(ρ_i)|`; `μ` has `2^k` entries.
pub fn joint_entropy_defect(mu: &Distribution, rhos: &[DensityMatrix], q: f64) -> Result<f64> {
    if mu.len() != rhos.len() || !mu.len().is_power_of_two() {
        return invalid("need one state per outcome and a power-of-two outcome count");
    }
    let d = rhos[0].dim();
    if rhos.iter().any(|r| r.dim() != d) {
        return invalid("component states differ in dimension");
    }
    let k = mu.len();
    let mut m = CMat::zeros(k * d, k * d);
    let mut rhs = tsallis_entropy(mu, q)?;
    for (i, (w, r)) in mu.probs().iter().zip(rhos).enumerate() {
        m.view_mut((i * d, i * d), (d, d)).copy_from(&r.matrix().scale(*w));
        rhs += w.powf(q) * r.tsallis(q)?;
    }
    let joint = DensityMatrix::new(m)?.tsallis(q)?;
    Ok((joint - rhs).abs())
}

/// `|S_q(ρ₀) − S_q(ρ₁)| − (T^q·ln_q(N−1) + H_q(T))`; non-positive when the bound holds.
pub fn fannes_slack(rho0: &DensityMatrix, rho1: &DensityMatrix, q: f64) -> Result<f64> {
    if !(q > 1.0) {
        return invalid("the continuity bound is checked for q > 1");
    }
    let t = trace_distance(rho0, rho1)?.min(1.0);
    let dim = rho0.dim() as f64;
    let bound = t.powf(q) * q_log_unchecked((dim - 1.0).max(1.0), q) + binary_entropy(t, q);
    Ok((rho0.tsallis(q)? - rho1.tsallis(q)?).abs() - bound)
}

/// `|T(ψ₀, ψ₁) − √(1 − |⟨ψ₀|ψ₁⟩|²)|`.
pub fn pure_trace_distance_defect(psi0: &PureState, psi1: &PureState) -> Result<f64> {
    let overlap = psi0.inner(psi1)?.norm_sqr().min(1.0);
    Ok((trace_distance(&psi0.density(), &psi1.density())? - (1.0 - overlap).sqrt()).abs())
}

/// `|QJT_q(diag p₀, diag p₁) − JT_q(p₀, p₁)|`.
pub fn diagonal_qjt_defect(p0: &Distribution, p1: &Distribution, q: f64) -> Result<f64> {
    let quantum = qjt_divergence(&DensityMatrix::diagonal(p0.probs())?, &DensityMatrix::diagonal(p1.probs())?, q)?;
    Ok((quantum - jt_divergence(p0, p1, q)?).abs())
}

// Below q = 1, λ^q amplifies the rounding noise of zero eigenvalues.
fn random_q(rng: &mut rng::Rng) -> f64 {
    rng.random_range(1.0..=3.0)
}

/// The five families on `instances` random cases each, merged into one report.
pub fn structural_suite(instances: usize, opts: &SuiteOptions) -> Result<SuiteReport> {
    let seed = opts.seed;
    let stream = |family: u64, i: usize| rng::stream(seed ^ (family << 48), i as u64);
    let parts = vec![
        run_cases("pseudo-additivity", IDENTITY_TOL, instances, opts, |i| {
            let mut r = stream(1, i);
            let (n0, n1) = (r.random_range(1..=2), r.random_range(1..=2));
            let (a, b) = (random_density_any_rank(n0, &mut r), random_density_any_rank(n1, &mut r));
            let q = random_q(&mut r);
            Ok((pseudo_additivity_defect(&a, &b, q)?, json!({"seed": seed, "index": i, "q": q})))
        })?,
        run_cases("joint-entropy", IDENTITY_TOL, instances, opts, |i| {
            let mut r = stream(2, i);
            let k = 1usize << r.random_range(1..=2);
            let n = r.random_range(1..=2);
            let mu = random_distribution(k, i % 3 == 0, &mut r);
            let rhos: Vec<DensityMatrix> = (0..k).map(|_| random_density_any_rank(n, &mut r)).collect();
            let q = random_q(&mut r);
            Ok((joint_entropy_defect(&mu, &rhos, q)?, json!({"seed": seed, "index": i, "q": q})))
        })?,
        run_cases("fannes", IDENTITY_TOL, instances, opts, |i| {
            let mut r = stream(3, i);
            let n = r.random_range(1..=3);
            let kind = [PairKind::Mixed, PairKind::Pure, PairKind::Commuting][i % 3];
            let (a, b) = random_pair(n, kind, &mut r);
            let q = r.random_range(1.0..=3.0f64).max(1.0 + 1e-6);
            Ok((fannes_slack(&a, &b, q)?, json!({"seed": seed, "index": i, "q": q, "kind": kind})))
        })?,
        run_cases("pure-trace-distance", IDENTITY_TOL, instances, opts, |i| {
            let mut r = stream(4, i);
            let n = r.random_range(1..=3);
            let (a, b) = (random_pure(n, &mut r), random_pure(n, &mut r));
            Ok((pure_trace_distance_defect(&a, &b)?, json!({"seed": seed, "index": i})))
        })?,
        run_cases("diagonal-qjt", IDENTITY_TOL, instances, opts, |i| {
            let mut r = stream(5, i);
            let d = 1usize << r.random_range(1..=3);
            let (p0, p1) = (random_distribution(d, i % 2 == 0, &mut r), random_distribution(d, i % 3 == 0, &mut r));
            let q = r.random_range(1.0..=2.0);
            Ok((diagonal_qjt_defect(&p0, &p1, q)?, json!({"seed": seed, "index": i, "q": q})))
        })?,
    ];
    Ok(SuiteReport::merge("structural", parts))
}
