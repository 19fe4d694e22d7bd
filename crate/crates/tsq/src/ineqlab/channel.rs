//! Quantum channels in Kraus form.

use crate::error::{invalid, Result};
use crate::qcore::linalg::{self, CMat, ONE};
use crate::qcore::random::{random_isometry, random_unitary};
use crate::qcore::state::{check_subsystem, split_masks};
use crate::qcore::DensityMatrix;
use crate::rng::{self, Rng};

pub const COMPLETENESS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    kraus_ops: Vec<CMat>,
}

impl KrausChannel {
    /// Checks shapes and `Σ K†K = I` to `1e−10`.
    pub fn new(kraus_ops: Vec<CMat>) -> Result<Self> {
        let Some(first) = kraus_ops.first() else {
            return invalid("a channel needs at least one Kraus operator");
        };
        let (d_out, d_in) = first.shape();
        if kraus_ops.iter().any(|k| k.shape() != (d_out, d_in)) {
            return invalid("Kraus operators have mismatched shapes");
        }
        let ch = KrausChannel { kraus_ops };
        let defect = ch.completeness_defect();
        if defect > COMPLETENESS_TOL {
            return invalid(format!("Kraus operators are not trace preserving (defect {defect:e})"));
        }
        Ok(ch)
    }

    pub fn kraus_ops(&self) -> &[CMat] {
        &self.kraus_ops
    }

    pub fn d_in(&self) -> usize {
        self.kraus_ops[0].ncols()
    }

    pub fn d_out(&self) -> usize {
        self.kraus_ops[0].nrows()
    }

    /// `max |Σ K†K − I|` entrywise.
    pub fn completeness_defect(&self) -> f64 {
        let mut s = CMat::zeros(self.d_in(), self.d_in());
        for k in &self.kraus_ops {
            s += k.adjoint() * k;
        }
        linalg::max_abs(&(s - linalg::identity(self.d_in())))
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.d_in() {
            return invalid(format!("channel input dimension {} but state has {}", self.d_in(), rho.dim()));
        }
        if !self.d_out().is_power_of_two() {
            return invalid("channel output is not a qubit register");
        }
        let mut out = CMat::zeros(self.d_out(), self.d_out());
        for k in &self.kraus_ops {
            out += k * rho.matrix() * k.adjoint();
        }
        Ok(DensityMatrix::from_trusted(out))
    }
}

/// Stinespring-form random channel: an isometry `V: C^{d_in} → C^{d_out} ⊗ C^r`
/// whose row blocks are the Kraus operators.
pub fn random_channel(d_in: usize, d_out: usize, kraus_rank: usize, seed: u64) -> Result<KrausChannel> {
    random_channel_with(d_in, d_out, kraus_rank, &mut rng::seeded(seed))
}

pub fn random_channel_with(d_in: usize, d_out: usize, kraus_rank: usize, rng: &mut Rng) -> Result<KrausChannel> {
    if d_in == 0 || d_out == 0 || kraus_rank == 0 {
        return invalid("channel dimensions and rank must be positive");
    }
    if d_out * kraus_rank < d_in {
        return invalid(format!("rank {kraus_rank} too small to map dimension {d_in} into {d_out}"));
    }
    let v = random_isometry(d_out * kraus_rank, d_in, rng);
    let ops = (0..kraus_rank).map(|i| v.rows(i * d_out, d_out).into_owned()).collect();
    KrausChannel::new(ops)
}

pub fn unitary_channel(u: CMat) -> Result<KrausChannel> {
    if !u.is_square() {
        return invalid("unitary must be square");
    }
    KrausChannel::new(vec![u])
}

pub fn random_unitary_channel(d: usize, rng: &mut Rng) -> KrausChannel {
    KrausChannel { kraus_ops: vec![random_unitary(d, rng)] }
}

/// `ρ ↦ (1 − p)ρ + p·tr(ρ)·I/d`.
pub fn depolarizing_channel(d: usize, p: f64) -> Result<KrausChannel> {
    if d == 0 || !(0.0..=1.0).contains(&p) {
        return invalid("depolarizing channel needs d ≥ 1 and p in [0, 1]");
    }
    let mut ops = Vec::with_capacity(d * d + 1);
    if p < 1.0 {
        ops.push(linalg::identity(d).scale((1.0 - p).sqrt()));
    }
    let w = (p / d as f64).sqrt();
    if w > 0.0 {
        for i in 0..d {
            for j in 0..d {
                let mut k = CMat::zeros(d, d);
                k[(i, j)] = ONE.scale(w);
                ops.push(k);
            }
        }
    }
    KrausChannel::new(ops)
}

/// Partial trace onto the qubits in `keep` of an `n`-qubit register.
pub fn partial_trace_channel(n: usize, keep: &[usize]) -> Result<KrausChannel> {
    check_subsystem(n, keep)?;
    let (kp, ep) = split_masks(n, keep);
    let ops = ep
        .iter()
        .map(|&e| {
            let mut k = CMat::zeros(kp.len(), 1 << n);
            for (a, &idx) in kp.iter().enumerate() {
                k[(a, idx | e)] = ONE;
            }
            k
        })
        .collect();
    KrausChannel::new(ops)
}
