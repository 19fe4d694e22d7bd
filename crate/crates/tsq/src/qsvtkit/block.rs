use serde::{Deserialize, Serialize};

use crate::chebapprox::ChebSeries;
use crate::error::{invalid, Result};
use crate::qcore::linalg::{self, CMat};
use crate::qcore::random::ginibre;
use crate::qcore::{prepare_state, DensityMatrix, GateCircuit};
use crate::rng;

/// A block-encoding tracked at matrix level: the top-left block of the
/// (never materialized) unitary is `op / subnorm`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockEncoding {
    pub op: CMat,
    pub subnorm: f64,
    pub ancillas: usize,
    pub encode_err: f64,
    /// Uses of the state-preparation unitary per application.
    pub cost_per_use: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryLedger {
    pub prep_queries: u64,
    pub shots: u64,
}

impl QueryLedger {
    pub fn charge(&mut self, prep_queries: u64, shots: u64) {
        self.prep_queries = self.prep_queries.saturating_add(prep_queries);
        self.shots = self.shots.saturating_add(shots);
    }

    pub fn merged(self, other: QueryLedger) -> QueryLedger {
        let mut out = self;
        out.charge(other.prep_queries, other.shots);
        out
    }
}

impl BlockEncoding {
    /// The encoded block `op / subnorm`.
    pub fn block(&self) -> CMat {
        self.op.unscale(self.subnorm)
    }

    pub fn dim(&self) -> usize {
        self.op.nrows()
    }

    /// One-ancilla unitary dilation `[[A, √(I−A²)], [√(I−A²), −A]]` of the
    /// Hermitian block `A`; its top-left block is exactly `A`.
    pub fn dilation(&self) -> Result<CMat> {
        let a = self.block();
        if linalg::op_norm_herm(&a) > 1.0 + 1e-10 {
            return invalid("block has operator norm above 1");
        }
        let s = linalg::herm_apply(&a, |x| (1.0 - x * x).max(0.0).sqrt());
        let d = a.nrows();
        let mut u = CMat::zeros(2 * d, 2 * d);
        u.view_mut((0, 0), (d, d)).copy_from(&a);
        u.view_mut((0, d), (d, d)).copy_from(&s);
        u.view_mut((d, 0), (d, d)).copy_from(&s);
        u.view_mut((d, d), (d, d)).copy_from(&(-a));
        Ok(u)
    }
}

/// Encoding of `ρ = prepare_state(circuit)` with subnormalization 1, built
/// from one use each of the preparation unitary and its inverse.
pub fn block_encode_density(circuit: &GateCircuit) -> Result<BlockEncoding> {
    let rho = prepare_state(circuit)?;
    Ok(BlockEncoding { op: rho.into_matrix(), subnorm: 1.0, ancillas: circuit.n_total, encode_err: 0.0, cost_per_use: 2 })
}

/// Encoding of a state given as a matrix, assuming a purification oracle on
/// `ancillas + n` qubits exists. Same cost model as [`block_encode_density`].
pub fn block_encode_state(rho: &DensityMatrix, ancillas: usize) -> BlockEncoding {
    BlockEncoding { op: rho.matrix().clone(), subnorm: 1.0, ancillas, encode_err: 0.0, cost_per_use: 2 }
}

/// The `(2, a, 0)` encoding of `ρ` (top-left block `ρ/2`) that a samplizer
/// simulates from copies of `ρ`.
pub fn block_encode_samplized(rho: &DensityMatrix, ancillas: usize) -> BlockEncoding {
    BlockEncoding { op: rho.matrix().clone(), subnorm: 2.0, ancillas, encode_err: 0.0, cost_per_use: 1 }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyOptions {
    /// Norm of an additive Hermitian perturbation modelling circuit synthesis error.
    pub delta: f64,
    pub seed: u64,
}

impl Default for PolyOptions {
    fn default() -> Self {
        PolyOptions { delta: 0.0, seed: 0 }
    }
}

/// Encoding of `½·P(A/α)` by spectral calculus, charging `d` uses of `be`.
pub fn poly_transform(be: &BlockEncoding, series: &ChebSeries) -> Result<BlockEncoding> {
    poly_transform_with(be, series, &PolyOptions::default())
}

pub fn poly_transform_with(be: &BlockEncoding, series: &ChebSeries, opts: &PolyOptions) -> Result<BlockEncoding> {
    if series.degree == 0 {
        return invalid("polynomial transform needs degree at least 1");
    }
    if !(opts.delta >= 0.0) {
        return invalid("delta must be non-negative");
    }
    let mut op = linalg::herm_apply(&be.block(), |x| 0.5 * series.eval_unchecked(x.clamp(-1.0, 1.0)));
    if opts.delta > 0.0 {
        op += hermitian_perturbation(op.nrows(), opts.delta, opts.seed);
    }
    let d = series.degree as f64;
    let inherited = 4.0 * d * (be.encode_err / be.subnorm).sqrt();
    Ok(BlockEncoding {
        op,
        subnorm: 1.0,
        ancillas: be.ancillas + 2,
        encode_err: inherited + opts.delta,
        cost_per_use: be.cost_per_use.saturating_mul(series.degree as u64),
    })
}

/// Random Hermitian matrix with operator norm exactly `delta`.
pub fn hermitian_perturbation(dim: usize, delta: f64, seed: u64) -> CMat {
    let g = ginibre(dim, dim, &mut rng::seeded(seed));
    let h = linalg::hermitize(&g);
    let norm = linalg::op_norm_herm(&h);
    if norm == 0.0 {
        return CMat::zeros(dim, dim);
    }
    h.scale(delta / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::Gate;
    use approx::assert_abs_diff_eq;

    fn bell() -> GateCircuit {
        let mut c = GateCircuit::new(2, vec![0]);
        c.push(Gate::h(0)).push(Gate::cx(0, 1));
        c
    }

    #[test]
    fn density_encodings() {
        let be = block_encode_density(&bell()).unwrap();
        assert!(linalg::max_abs(&(be.op.clone() - linalg::identity(2).scale(0.5))) < 1e-15);
        assert_eq!((be.subnorm, be.cost_per_use, be.encode_err), (1.0, 2, 0.0));
        let zero = block_encode_density(&GateCircuit::new(1, vec![0])).unwrap();
        assert_abs_diff_eq!(zero.op[(0, 0)].re, 1.0);
        assert!(linalg::op_norm_herm(&zero.op) <= 1.0);
    }

    #[test]
    fn linear_transform() {
        let be = block_encode_density(&bell()).unwrap();
        let s = ChebSeries::new(vec![0.0, 1.0]).unwrap();
        let out = poly_transform(&be, &s).unwrap();
        assert!(linalg::max_abs(&(out.op.clone() - linalg::identity(2).scale(0.25))) < 1e-15);
        assert_eq!(out.cost_per_use, 2);
        let s3 = ChebSeries::new(vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(poly_transform(&be, &s3).unwrap().cost_per_use, 6);
        assert!(poly_transform(&be, &ChebSeries::new(vec![1.0]).unwrap()).is_err());
    }

    #[test]
    fn perturbation_norm() {
        let e = hermitian_perturbation(4, 1e-3, 7);
        assert_abs_diff_eq!(linalg::op_norm_herm(&e), 1e-3, epsilon = 1e-15);
        let be = block_encode_density(&bell()).unwrap();
        let s = ChebSeries::new(vec![0.0, 1.0]).unwrap();
        let out = poly_transform_with(&be, &s, &PolyOptions { delta: 1e-3, seed: 1 }).unwrap();
        assert_abs_diff_eq!(out.encode_err, 1e-3);
    }

    #[test]
    fn dilation_is_unitary() {
        let rho = crate::qcore::random_density(2, 3, 4).unwrap();
        let be = block_encode_state(&rho, 2);
        let u = be.dilation().unwrap();
        assert!(linalg::max_abs(&(&u * u.adjoint() - linalg::identity(8))) < 1e-12);
        assert!(linalg::max_abs(&(u.view((0, 0), (4, 4)).into_owned() - rho.matrix())) < 1e-15);
    }
}
