use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng as _;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::aux;
use super::channel::{
    depolarizing_channel, partial_trace_channel, random_channel_with, random_unitary_channel, KrausChannel,
};
use super::extremal::{extremal_distributions, sample_at_tv};
use super::report::{run_cases, SuiteOptions, SuiteReport, CLOSED_FORM_TOL, SPECTRAL_TOL};
use crate::error::{domain, invalid, Result};
use crate::qcore::entropy::{q_log_unchecked, tsallis_of_slice};
use crate::qcore::linalg;
use crate::qcore::random::{random_density_any_rank, random_distribution, random_pure, random_unitary};
use crate::qcore::{binary_entropy, jt_divergence, qjt_divergence, tv_distance, DensityMatrix, Distribution};
use crate::rng::{self, Rng};

fn check_unit_q(q: f64) -> Result<()> {
    if !(1.0..=2.0).contains(&q) {
        return domain(format!("q = {q} outside [1, 2]"));
    }
    Ok(())
}

/// Eleven points `1.0, 1.1, …, 2.0`.
pub fn default_q_grid() -> Vec<f64> {
    (0..=10).map(|k| 1.0 + k as f64 / 10.0).collect()
}

// ---------------------------------------------------------------- sandwich

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SandwichEntry {
    pub q: f64,
    pub trace_distance: f64,
    /// `H_q(½) − H_q((1 − T)/2)`
    pub lower: f64,
    pub qjt: f64,
    /// `H_q(½)·½tr|ρ₀ − ρ₁|^q`
    pub middle: f64,
    /// `H_q(½)·T^q`
    pub upper: f64,
    /// `max(lower − qjt, qjt − middle, middle − upper)`
    pub violation: f64,
}

/// Spectra that determine every quantity of the sandwich at any `q`.
struct PairSpectra {
    e0: Vec<f64>,
    e1: Vec<f64>,
    mid: Vec<f64>,
    diff_abs: Vec<f64>,
    t: f64,
}

impl PairSpectra {
    fn new(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<Self> {
        if rho0.dim() != rho1.dim() {
            return invalid("dimension mismatch");
        }
        let mid = linalg::herm_eigenvalues(&(rho0.matrix() + rho1.matrix()).scale(0.5));
        let diff_abs: Vec<f64> =
            linalg::herm_eigenvalues(&(rho0.matrix() - rho1.matrix())).into_iter().map(f64::abs).collect();
        let t = 0.5 * diff_abs.iter().sum::<f64>();
        Ok(PairSpectra {
            e0: rho0.eigenvalues(),
            e1: rho1.eigenvalues(),
            mid: mid.into_iter().map(|x| x.max(0.0)).collect(),
            diff_abs,
            t: t.min(1.0),
        })
    }

    fn entry(&self, q: f64) -> SandwichEntry {
        let h_half = binary_entropy(0.5, q);
        let qjt = tsallis_of_slice(&self.mid, q) - 0.5 * (tsallis_of_slice(&self.e0, q) + tsallis_of_slice(&self.e1, q));
        let lower = h_half - binary_entropy(0.5 * (1.0 - self.t), q);
        let middle = h_half * 0.5 * self.diff_abs.iter().map(|x| x.powf(q)).sum::<f64>();
        let upper = h_half * self.t.powf(q);
        let violation = (lower - qjt).max(qjt - middle).max(middle - upper);
        SandwichEntry { q, trace_distance: self.t, lower, qjt, middle, upper, violation }
    }
}

pub fn qjt_sandwich_check(rho0: &DensityMatrix, rho1: &DensityMatrix, q: f64) -> Result<SandwichEntry> {
    check_unit_q(q)?;
    Ok(PairSpectra::new(rho0, rho1)?.entry(q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    Mixed,
    Pure,
    OrthogonalPure,
    Identical,
    Commuting,
}

/// A seeded random pair of `n`-qubit states of the given kind.
pub fn random_pair(n: usize, kind: PairKind, rng: &mut Rng) -> (DensityMatrix, DensityMatrix) {
    match kind {
        PairKind::Mixed => (random_density_any_rank(n, rng), random_density_any_rank(n, rng)),
        PairKind::Pure => (random_pure(n, rng).density(), random_pure(n, rng).density()),
        PairKind::OrthogonalPure => {
            let u = random_unitary(1 << n, rng);
            let b0 = DensityMatrix::basis(n, 0).expect("basis state");
            let b1 = DensityMatrix::basis(n, 1).expect("basis state");
            (b0.conjugate(&u).expect("unitary"), b1.conjugate(&u).expect("unitary"))
        }
        PairKind::Identical => {
            let r = random_density_any_rank(n, rng);
            (r.clone(), r)
        }
        PairKind::Commuting => {
            let u = random_unitary(1 << n, rng);
            let d0 = DensityMatrix::diagonal(random_distribution(1 << n, true, rng).probs()).expect("distribution");
            let d1 = DensityMatrix::diagonal(random_distribution(1 << n, true, rng).probs()).expect("distribution");
            (d0.conjugate(&u).expect("unitary"), d1.conjugate(&u).expect("unitary"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SandwichLink {
    /// `H_q(½) − H_q((1 − T)/2) ≤ QJT_q`
    Lower,
    /// `QJT_q ≤ H_q(½)·½tr|ρ₀ − ρ₁|^q ≤ H_q(½)·T^q`
    Upper,
}

impl SandwichEntry {
    pub fn link_violation(&self, link: SandwichLink) -> f64 {
        match link {
            SandwichLink::Lower => self.lower - self.qjt,
            SandwichLink::Upper => (self.qjt - self.middle).max(self.middle - self.upper),
        }
    }
}

/// Which random pairs a sandwich suite draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairEnsemble {
    pub min_qubits: usize,
    pub max_qubits: usize,
}

impl Default for PairEnsemble {
    fn default() -> Self {
        PairEnsemble { min_qubits: 1, max_qubits: 3 }
    }
}

fn pair_for_case(ens: PairEnsemble, rng: &mut Rng) -> (usize, PairKind, DensityMatrix, DensityMatrix) {
    let n = rng.random_range(ens.min_qubits..=ens.max_qubits);
    let kind = *[
        PairKind::Mixed,
        PairKind::Mixed,
        PairKind::Mixed,
        PairKind::Pure,
        PairKind::OrthogonalPure,
        PairKind::Identical,
        PairKind::Commuting,
    ]
    .choose(rng)
    .expect("non-empty");
    let (a, b) = random_pair(n, kind, rng);
    (n, kind, a, b)
}

/// One link of the sandwich over `pairs` random pairs, each at every `q` of the grid.
pub fn qjt_link_suite(
    link: SandwichLink,
    pairs: usize,
    q_grid: &[f64],
    ens: PairEnsemble,
    opts: &SuiteOptions,
) -> Result<SuiteReport> {
    for &q in q_grid {
        check_unit_q(q)?;
    }
    if ens.min_qubits == 0 || ens.min_qubits > ens.max_qubits {
        return invalid("empty qubit range");
    }
    let seed = opts.seed;
    let name = match link {
        SandwichLink::Lower => "qjt-lower",
        SandwichLink::Upper => "qjt-upper",
    };
    let mut report = run_cases(name, SPECTRAL_TOL, pairs, opts, |i| {
        let mut rng = rng::stream(seed, i as u64);
        let (n, kind, a, b) = pair_for_case(ens, &mut rng);
        let spectra = PairSpectra::new(&a, &b)?;
        let (v, worst) = q_grid
            .iter()
            .map(|&q| {
                let e = spectra.entry(q);
                (e.link_violation(link), e)
            })
            .fold(None::<(f64, SandwichEntry)>, |w, c| match w {
                Some(w) if w.0 >= c.0 => Some(w),
                _ => Some(c),
            })
            .expect("non-empty q grid");
        Ok((v, json!({"seed": seed, "index": i, "qubits": n, "kind": kind, "entry": worst})))
    })?;
    report.cases = pairs * q_grid.len();
    Ok(report)
}

/// Both links over the same pairs.
pub fn qjt_sandwich_suite(pairs: usize, q_grid: &[f64], ens: PairEnsemble, opts: &SuiteOptions) -> Result<SuiteReport> {
    let parts = vec![
        qjt_link_suite(SandwichLink::Lower, pairs, q_grid, ens, opts)?,
        qjt_link_suite(SandwichLink::Upper, pairs, q_grid, ens, opts)?,
    ];
    let mut r = SuiteReport::merge("qjt-sandwich", parts);
    r.cases = pairs * q_grid.len();
    Ok(r)
}

// ----------------------------------------------------------- binary bounds

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinaryEntry {
    pub x: f64,
    pub q: f64,
    pub entropy: f64,
    /// `H_q(½)·4x(1−x)`
    pub lower: f64,
    /// `H_q(½)·√(4x(1−x))`, asserted for `q ∈ [1, 2]` only.
    pub upper: Option<f64>,
    pub violation: f64,
}

fn lower_bound_domain(q: f64) -> bool {
    (0.0..=2.0).contains(&q) || q >= 3.0
}

pub fn binary_bound_entry(x: f64, q: f64) -> Result<BinaryEntry> {
    if !(0.0..=1.0).contains(&x) {
        return invalid(format!("x = {x} outside [0, 1]"));
    }
    if !lower_bound_domain(q) {
        return domain(format!("q = {q} outside [0, 2] ∪ [3, ∞)"));
    }
    let h_half = binary_entropy(0.5, q);
    let entropy = binary_entropy(x, q);
    let s = 4.0 * x * (1.0 - x);
    let lower = h_half * s;
    let upper = (1.0..=2.0).contains(&q).then(|| h_half * s.sqrt());
    let violation = (lower - entropy).max(upper.map_or(f64::NEG_INFINITY, |u| entropy - u));
    Ok(BinaryEntry { x, q, entropy, lower, upper, violation })
}

/// Both binary-entropy bounds on the product grid.
pub fn binary_bound_check(x_grid: &[f64], q_grid: &[f64], opts: &SuiteOptions) -> Result<SuiteReport> {
    for &q in q_grid {
        if !lower_bound_domain(q) {
            return domain(format!("q = {q} outside [0, 2] ∪ [3, ∞)"));
        }
    }
    let mut report = run_cases("binary-bounds", CLOSED_FORM_TOL, x_grid.len(), opts, |i| {
        let mut worst: Option<BinaryEntry> = None;
        for &q in q_grid {
            let e = binary_bound_entry(x_grid[i], q)?;
            if worst.is_none_or(|w| e.violation > w.violation) {
                worst = Some(e);
            }
        }
        let w = worst.expect("non-empty q grid");
        Ok((w.violation, json!({"x_index": i, "entry": w})))
    })?;
    report.cases = x_grid.len() * q_grid.len();
    Ok(report)
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// `points × points` grid over `x ∈ [0, 1]`, `q ∈ [1, 2]`, plus the lower bound
/// alone on `q ∈ {0, ¼, ½, ¾, 3, 4, 6, 10}`.
pub fn binary_bound_suite(points: usize, opts: &SuiteOptions) -> Result<SuiteReport> {
    let xs = linspace(0.0, 1.0, points);
    let main = binary_bound_check(&xs, &linspace(1.0, 2.0, points), opts)?;
    let extra = binary_bound_check(&xs, &[0.0, 0.25, 0.5, 0.75, 3.0, 4.0, 6.0, 10.0], opts)?;
    Ok(SuiteReport::merge("binary-bounds", vec![main, extra]))
}

// --------------------------------------------------------- data processing

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DataProcessingEntry {
    pub q: f64,
    pub before: f64,
    pub after: f64,
    /// `after − before`
    pub violation: f64,
}

pub fn data_processing_check(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    channel: &KrausChannel,
    q: f64,
) -> Result<DataProcessingEntry> {
    check_unit_q(q)?;
    let before = qjt_divergence(rho0, rho1, q)?;
    let after = qjt_divergence(&channel.apply(rho0)?, &channel.apply(rho1)?, q)?;
    Ok(DataProcessingEntry { q, before, after, violation: after - before })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    Stinespring,
    Unitary,
    Depolarizing,
    PartialTrace,
}

/// Unitary and depolarizing channels are mixtures of unitaries. The other
/// kinds are general channels and may shrink the output dimension.
fn channel_for_case(n_in: usize, mixed_unitary: bool, rng: &mut Rng) -> Result<(ChannelKind, Value, KrausChannel)> {
    let d_in = 1usize << n_in;
    Ok(match (mixed_unitary, rng.random_range(0..4)) {
        (true, 0 | 1) => (ChannelKind::Unitary, json!({}), random_unitary_channel(d_in, rng)),
        (true, _) => {
            let p: f64 = rng.random();
            (ChannelKind::Depolarizing, json!({"p": p}), depolarizing_channel(d_in, p)?)
        }
        (false, 3) if n_in >= 2 => {
            let mut qubits: Vec<usize> = (0..n_in).collect();
            qubits.shuffle(rng);
            let keep: Vec<usize> = qubits[..rng.random_range(1..n_in)].to_vec();
            let ch = partial_trace_channel(n_in, &keep)?;
            (ChannelKind::PartialTrace, json!({"keep": keep}), ch)
        }
        (false, _) => {
            let n_out = rng.random_range(1..=3);
            let d_out = 1usize << n_out;
            let min_rank = d_in.div_ceil(d_out);
            let rank = rng.random_range(min_rank..=min_rank + 3);
            let ch = random_channel_with(d_in, d_out, rank, rng)?;
            (ChannelKind::Stinespring, json!({"n_out": n_out, "rank": rank}), ch)
        }
    })
}

/// `draws` random (pair, channel, q) triples from one channel class, with `q`
/// drawn from `[1, 2]` unless pinned. A quarter of the general draws are
/// product pairs `τ_i ⊗ σ` under the partial trace over `σ`.
pub fn data_processing_part(
    draws: usize,
    mixed_unitary: bool,
    pinned_q: Option<f64>,
    opts: &SuiteOptions,
) -> Result<SuiteReport> {
    let seed = opts.seed;
    let name = if mixed_unitary { "data-processing-mixed-unitary" } else { "data-processing-general" };
    let salt = if mixed_unitary { 0 } else { 1u64 << 40 };
    run_cases(name, SPECTRAL_TOL, draws, opts, |i| {
        let mut rng = rng::stream(seed, salt + i as u64);
        let q = pinned_q.unwrap_or(match i % 10 {
            0 => 1.0,
            1 => 2.0,
            _ => rng.random_range(1.0..=2.0),
        });
        if !mixed_unitary && i % 4 == 3 {
            // τ₀ ⊗ σ against τ₁ ⊗ σ, then σ traced out.
            let n = rng.random_range(2..=3);
            let k = rng.random_range(1..n);
            let (t0, t1) = random_pair(k, PairKind::Mixed, &mut rng);
            let sigma = random_density_any_rank(n - k, &mut rng);
            let keep: Vec<usize> = (0..k).collect();
            let ch = partial_trace_channel(n, &keep)?;
            let e = data_processing_check(&t0.tensor(&sigma), &t1.tensor(&sigma), &ch, q)?;
            return Ok((
                e.violation,
                json!({"seed": seed, "index": i, "qubits": n, "pair": "product", "channel": ChannelKind::PartialTrace, "channel_params": {"keep": keep}, "entry": e}),
            ));
        }
        let (n, kind, a, b) = pair_for_case(PairEnsemble::default(), &mut rng);
        let (ckind, params, ch) = channel_for_case(n, mixed_unitary, &mut rng)?;
        let e = data_processing_check(&a, &b, &ch, q)?;
        Ok((
            e.violation,
            json!({"seed": seed, "index": i, "qubits": n, "pair": kind, "channel": ckind, "channel_params": params, "entry": e}),
        ))
    })
}

/// `draws` draws split evenly between mixed-unitary and general channels.
pub fn data_processing_suite(draws: usize, opts: &SuiteOptions) -> Result<SuiteReport> {
    let half = draws / 2;
    let parts = vec![data_processing_part(half, true, None, opts)?, data_processing_part(draws - half, false, None, opts)?];
    Ok(SuiteReport::merge("data-processing", parts))
}

/// `τ₀ ⊗ ½I` and `τ₁ ⊗ ½I` for orthogonal pure qubits `τ₀`, `τ₁`. Tracing
/// out the second qubit raises QJT_q by `(1 − 2^{1−q})²/(q − 1)` for `q > 1`,
/// since `QJT_q(ρ₀ ⊗ σ, ρ₁ ⊗ σ) = tr(σ^q)·QJT_q(ρ₀, ρ₁)`.
pub fn partial_trace_counterexample() -> (DensityMatrix, DensityMatrix) {
    let half = DensityMatrix::maximally_mixed(1);
    let tau = |i| DensityMatrix::basis(1, i).expect("basis state");
    (tau(0).tensor(&half), tau(1).tensor(&half))
}

// --------------------------------------------------- closeness to uniform

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformTvEntry {
    pub n: usize,
    pub q: f64,
    pub tv: f64,
    pub entropy: f64,
    /// `(1 − TV − 1/N)·ln_q N`
    pub lower: f64,
    /// `ln_q(N(1 − TV))`, asserted when `1/q ≤ TV ≤ 1 − 1/N`.
    pub upper: Option<f64>,
    pub violation: f64,
}

const TV_SLACK: f64 = 1e-12;

pub fn uniform_tv_bound_check(p: &Distribution, q: f64) -> Result<UniformTvEntry> {
    if !(q > 1.0) {
        return domain(format!("uniform-TV bounds need q > 1, got {q}"));
    }
    let n = p.len();
    if n < 2 {
        return invalid("need at least two outcomes");
    }
    Ok(uniform_tv_entry(p.probs(), q))
}

fn uniform_tv_entry(p: &[f64], q: f64) -> UniformTvEntry {
    let n = p.len();
    let nf = n as f64;
    let u = 1.0 / nf;
    let tv = 0.5 * p.iter().map(|x| (x - u).abs()).sum::<f64>();
    let entropy = tsallis_of_slice(p, q);
    let lower = (1.0 - tv - u) * q_log_unchecked(nf, q);
    let upper = (q * tv >= 1.0 - TV_SLACK && tv <= 1.0 - u + TV_SLACK)
        .then(|| q_log_unchecked((nf * (1.0 - tv)).max(f64::MIN_POSITIVE), q));
    let violation = (lower - entropy).max(upper.map_or(f64::NEG_INFINITY, |b| entropy - b));
    UniformTvEntry { n, q, tv, entropy, lower, upper, violation }
}

/// Random extremal and interior distributions at random TV levels, `N ∈ [2, 10]`,
/// `q ∈ (1, 4]`. Half of the draws pick TV inside the upper bound's window.
pub fn uniform_tv_suite(draws: usize, opts: &SuiteOptions) -> Result<SuiteReport> {
    let seed = opts.seed;
    run_cases("uniform-tv", SPECTRAL_TOL, draws, opts, |i| {
        let mut rng = rng::stream(seed, i as u64);
        let n = rng.random_range(2..=10usize);
        let q = 1.0 + 3.0 * (1.0 - rng.random::<f64>());
        let top = 1.0 - 1.0 / n as f64;
        let gamma = if i % 2 == 1 && 1.0 / q <= top {
            rng.random_range(1.0 / q..=top)
        } else {
            rng.random_range(0.0..=top)
        };
        let (lo, hi) = extremal_distributions(n, gamma)?;
        let (which, p) = match i % 3 {
            0 => ("p_min", lo),
            1 => ("p_max", hi),
            _ => ("interior", sample_at_tv(n, gamma, &mut rng)?),
        };
        let e = uniform_tv_bound_check(&p, q)?;
        Ok((e.violation, json!({"seed": seed, "index": i, "gamma": gamma, "kind": which, "p": p, "entry": e})))
    })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn visit_compositions(rest: usize, parts: usize, prefix: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if parts == 1 {
        prefix.push(rest);
        f(prefix);
        prefix.pop();
        return;
    }
    for c in 0..=rest {
        prefix.push(c);
        visit_compositions(rest - c, parts - 1, prefix, f);
        prefix.pop();
    }
}

/// Every point of the simplex grid with spacing `1/steps` in dimension `n`,
/// for each `q`.
pub fn uniform_tv_brute_force(n: usize, steps: usize, q_grid: &[f64], opts: &SuiteOptions) -> Result<SuiteReport> {
    if !(2..=6).contains(&n) || steps == 0 {
        return invalid("brute force supports 2 ≤ N ≤ 6 and a positive step count");
    }
    if let Some(q) = q_grid.iter().find(|q| !(**q > 1.0)) {
        return domain(format!("uniform-TV bounds need q > 1, got {q}"));
    }
    let mut report = run_cases(&format!("uniform-tv-simplex-n{n}"), SPECTRAL_TOL, steps + 1, opts, |c0| {
        let mut worst: Option<UniformTvEntry> = None;
        let mut worst_p = Vec::new();
        let mut prefix = vec![c0];
        let mut p = vec![0.0; n];
        visit_compositions(steps - c0, n - 1, &mut prefix, &mut |counts| {
            for (pi, &c) in p.iter_mut().zip(counts) {
                *pi = c as f64 / steps as f64;
            }
            for &q in q_grid {
                let e = uniform_tv_entry(&p, q);
                if worst.as_ref().is_none_or(|w| e.violation > w.violation) {
                    worst = Some(e);
                    worst_p = p.clone();
                }
            }
        });
        let w = worst.expect("at least one point");
        Ok((w.violation, json!({"n": n, "steps": steps, "p": worst_p, "entry": w})))
    })?;
    report.cases = binomial(steps + n - 1, n - 1) * q_grid.len();
    Ok(report)
}

/// Random draws plus the simplex sweeps for `N ∈ {2, …, 5}` at step 0.01.
pub fn uniform_tv_full_suite(draws: usize, opts: &SuiteOptions) -> Result<SuiteReport> {
    let q_grid = [1.2, 1.5, 1.8, 2.0, 3.0];
    let mut parts = vec![uniform_tv_suite(draws, opts)?];
    for n in 2..=5 {
        parts.push(uniform_tv_brute_force(n, 100, &q_grid, opts)?);
    }
    Ok(SuiteReport::merge("uniform-tv", parts))
}

// ------------------------------------------------------- auxiliary facts

fn scalar_part(name: &str, grid: &[f64], f: impl Fn(f64) -> f64 + Sync, opts: &SuiteOptions) -> Result<SuiteReport> {
    run_cases(name, CLOSED_FORM_TOL, grid.len(), opts, |i| {
        let v = f(grid[i]);
        Ok((v, json!({"n": grid[i], "violation": v})))
    })
}

/// Real `n` from `a` to `b` in steps of 0.01.
fn n_grid(a: f64, b: f64) -> Vec<f64> {
    let steps = ((b - a) * 100.0).round() as usize;
    (0..=steps).map(|i| a + i as f64 / 100.0).collect()
}

/// Classical bound `H_q(½) − H_q(½ − TV/2) ≤ JT_q(p₀, p₁)`.
pub fn classical_jt_lower_check(p0: &Distribution, p1: &Distribution, q: f64) -> Result<f64> {
    check_unit_q(q)?;
    let tv = tv_distance(p0.probs(), p1.probs())?;
    let lhs = binary_entropy(0.5, q) - binary_entropy(0.5 - 0.5 * tv, q);
    Ok(lhs - jt_divergence(p0, p1, q)?)
}

/// `g₁ ≥ 0`; `g₂`, `g₃`, `g₄` increasing on `n ∈ [3, 200]`; `(g₄ − 1)/4 > 1/13`;
/// `(g₁ + g₂ + g₃ − 7/4) > 1/150` for `n ≥ 5` and its identity with
/// `τ_yes − t`; the classical JT lower bound on `jt_pairs` random pairs.
pub fn auxiliary_fact_suite(jt_pairs: usize, opts: &SuiteOptions) -> Result<SuiteReport> {
    let grid = n_grid(3.0, 200.0);
    let h = 0.01;
    let mut parts = vec![
        scalar_part("g1-nonnegative", &grid, |n| -aux::g1(n), opts)?,
        scalar_part("g2-increasing", &grid, |n| aux::g2(n) - aux::g2(n + h), opts)?,
        scalar_part("g3-increasing", &grid, |n| aux::g3(n) - aux::g3(n + h), opts)?,
        scalar_part("g4-increasing", &grid, |n| aux::g4(n) - aux::g4(n + h), opts)?,
        scalar_part("no-margin", &grid, |n| 1.0 / 13.0 - aux::no_margin(n), opts)?,
        scalar_part("yes-margin", &n_grid(5.0, 200.0), |n| 1.0 / 150.0 - aux::yes_margin(n), opts)?,
        scalar_part(
            "yes-margin-identity",
            &grid,
            |n| (aux::tau_yes(n) - aux::threshold_t(n) - aux::yes_margin(n)).abs(),
            opts,
        )?,
    ];
    parts.push(classical_jt_lower_suite(jt_pairs, 2, 8, opts)?);
    Ok(SuiteReport::merge("aux-facts", parts))
}

/// The classical JT lower bound on `pairs` random pairs with support sizes in
/// `min_support..=max_support` and `q ∈ [1, 2]`.
pub fn classical_jt_lower_suite(
    pairs: usize,
    min_support: usize,
    max_support: usize,
    opts: &SuiteOptions,
) -> Result<SuiteReport> {
    if min_support < 2 || min_support > max_support {
        return invalid("support range must lie in [2, ∞) and be non-empty");
    }
    let seed = opts.seed;
    run_cases("classical-jt-lower", SPECTRAL_TOL, pairs, opts, |i| {
        let mut rng = rng::stream(seed, i as u64);
        let n = rng.random_range(min_support..=max_support);
        let p0 = random_distribution(n, i % 2 == 0, &mut rng);
        let p1 = if i % 7 == 0 { p0.clone() } else { random_distribution(n, i % 3 == 0, &mut rng) };
        let q = rng.random_range(1.0..=2.0);
        let v = classical_jt_lower_check(&p0, &p1, q)?;
        Ok((v, json!({"seed": seed, "index": i, "q": q, "p0": p0, "p1": p1})))
    })
}

/// Part names of the trace-distance lower bounds, which fail for `q > 1` once
/// the dimension reaches 3.
pub const KNOWN_FALSE_PARTS: [&str; 3] = ["qjt-lower", "classical-jt-lower", "data-processing-general"];

/// `(½,½,0,0)` against `(0,0,½,½)`. TV = 1 puts the lower bound at `H_q(½)`,
/// which exceeds `JT_q` by `(1 − 2^{1−q})²/(q − 1)` for every `q > 1`.
pub fn lower_bound_counterexample() -> (Distribution, Distribution) {
    (
        Distribution::new(vec![0.5, 0.5, 0.0, 0.0]).expect("distribution"),
        Distribution::new(vec![0.0, 0.0, 0.5, 0.5]).expect("distribution"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::trace_distance;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sandwich_examples() {
        let a = DensityMatrix::basis(1, 0).unwrap();
        let b = DensityMatrix::basis(1, 1).unwrap();
        assert_eq!(trace_distance(&a, &b).unwrap(), 1.0);
        let e = qjt_sandwich_check(&a, &b, 2.0).unwrap();
        assert_abs_diff_eq!(e.lower, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(e.qjt, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(e.middle, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(e.upper, 0.5, epsilon = 1e-12);
        let r = crate::qcore::random_density(2, 3, 1).unwrap();
        let e = qjt_sandwich_check(&r, &r, 1.5).unwrap();
        assert!(e.lower.abs() < 1e-12 && e.qjt.abs() < 1e-12 && e.upper.abs() < 1e-12);
        assert!(qjt_sandwich_check(&r, &r, 2.5).is_err());
    }

    #[test]
    fn small_suites_pass() {
        let opts = SuiteOptions { seed: 1, jobs: 1 };
        for r in [
            qjt_link_suite(SandwichLink::Upper, 200, &default_q_grid(), PairEnsemble::default(), &opts).unwrap(),
            data_processing_part(200, true, None, &opts).unwrap(),
            data_processing_part(200, false, Some(1.0), &opts).unwrap(),
            uniform_tv_suite(300, &opts).unwrap(),
            uniform_tv_brute_force(3, 20, &[1.8], &opts).unwrap(),
            binary_bound_suite(50, &opts).unwrap(),
        ] {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn lower_links_hold_on_qubits_and_at_q_one() {
        let opts = SuiteOptions { seed: 5, jobs: 1 };
        let qubit = PairEnsemble { min_qubits: 1, max_qubits: 1 };
        assert!(qjt_link_suite(SandwichLink::Lower, 300, &default_q_grid(), qubit, &opts).unwrap().pass);
        let r = qjt_link_suite(SandwichLink::Lower, 300, &[1.0], PairEnsemble::default(), &opts).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(classical_jt_lower_suite(300, 2, 2, &opts).unwrap().pass);
    }

    #[test]
    fn lower_links_fail_beyond_qubits() {
        let (p0, p1) = lower_bound_counterexample();
        assert_abs_diff_eq!(classical_jt_lower_check(&p0, &p1, 2.0).unwrap(), 0.25, epsilon = 1e-12);
        for q in [1.1f64, 1.5, 2.0] {
            let gap = (1.0 - (1.0 - q).exp2()).powi(2) / (q - 1.0);
            assert_abs_diff_eq!(classical_jt_lower_check(&p0, &p1, q).unwrap(), gap, epsilon = 1e-12);
        }
        let (a, b) = (DensityMatrix::diagonal(p0.probs()).unwrap(), DensityMatrix::diagonal(p1.probs()).unwrap());
        let e = qjt_sandwich_check(&a, &b, 2.0).unwrap();
        assert_abs_diff_eq!(e.lower, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(e.qjt, 0.25, epsilon = 1e-12);
        let r = auxiliary_fact_suite(200, &SuiteOptions { seed: 1, jobs: 1 }).unwrap();
        assert_eq!(r.failed_parts, vec!["classical-jt-lower".to_string()]);
    }

    #[test]
    fn binary_examples() {
        let e = binary_bound_entry(0.5, 1.7).unwrap();
        assert_abs_diff_eq!(e.lower, e.entropy, epsilon = 1e-15);
        assert_abs_diff_eq!(e.upper.unwrap(), e.entropy, epsilon = 1e-15);
        let e = binary_bound_entry(0.0, 1.2).unwrap();
        assert_eq!((e.lower, e.entropy, e.upper), (0.0, 0.0, Some(0.0)));
        let e = binary_bound_entry(0.125, 1.3).unwrap();
        assert!(e.lower < e.entropy && e.entropy < e.upper.unwrap());
        assert!(binary_bound_entry(0.3, 2.5).is_err());
    }

    #[test]
    fn uniform_tv_examples() {
        let (_, hi) = extremal_distributions(4, 0.6).unwrap();
        let e = uniform_tv_bound_check(&hi, 2.0).unwrap();
        assert_abs_diff_eq!(e.upper.unwrap(), 0.375, epsilon = 1e-12);
        assert!(e.entropy <= 0.375);
        let e = uniform_tv_bound_check(&Distribution::uniform(4), 2.0).unwrap();
        assert_abs_diff_eq!(e.lower, 0.75 * 0.75, epsilon = 1e-12);
        assert!(e.upper.is_none());
        assert_eq!(binomial(104, 4), 4_598_126);
    }

    #[test]
    fn unitary_and_depolarizing_processing() {
        let mut rng = rng::seeded(4);
        let (a, b) = random_pair(2, PairKind::Mixed, &mut rng);
        let u = random_unitary_channel(4, &mut rng);
        let e = data_processing_check(&a, &b, &u, 1.6).unwrap();
        assert!(e.violation.abs() < 1e-10);
        let e = data_processing_check(&a, &b, &depolarizing_channel(4, 1.0).unwrap(), 1.6).unwrap();
        assert!(e.after.abs() < 1e-12);
    }

    #[test]
    fn partial_trace_can_raise_the_divergence() {
        let (a, b) = partial_trace_counterexample();
        let tr = partial_trace_channel(2, &[0]).unwrap();
        for q in [1.2f64, 1.5, 2.0] {
            let e = data_processing_check(&a, &b, &tr, q).unwrap();
            let h = binary_entropy(0.5, q);
            assert_abs_diff_eq!(e.before, (1.0 - q).exp2() * h, epsilon = 1e-12);
            assert_abs_diff_eq!(e.after, h, epsilon = 1e-12);
            assert_abs_diff_eq!(e.violation, (1.0 - (1.0 - q).exp2()).powi(2) / (q - 1.0), epsilon = 1e-12);
        }
        assert!(data_processing_check(&a, &b, &tr, 1.0).unwrap().violation <= 1e-12);
        let r = data_processing_suite(2000, &SuiteOptions { seed: 7, jobs: 1 }).unwrap();
        assert_eq!(r.failed_parts, vec!["data-processing-general".to_string()]);
    }
}
