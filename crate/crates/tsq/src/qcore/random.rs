//! Seeded random instances: states, unitaries, distributions, circuits.

use num_complex::Complex64;
use rand::Rng as _;
use rand_distr::{Distribution as _, Exp1, StandardNormal};

use super::circuit::{Gate, GateCircuit};
use super::entropy::Distribution;
use super::linalg::{CMat, CVec};
use super::state::{DensityMatrix, PureState};
use crate::error::{invalid, Result};
use crate::rng::{self, Rng};

pub fn complex_gaussian(rng: &mut Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre(rows: usize, cols: usize, rng: &mut Rng) -> CMat {
    CMat::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Random state of rank at most `rank`: a Gaussian purification on
/// `2^n × rank` amplitudes with the purifying register traced out.
pub fn random_density(n: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_with(n, rank, &mut rng::seeded(seed))
}

pub fn random_density_with(n: usize, rank: usize, rng: &mut Rng) -> Result<DensityMatrix> {
    let d = 1usize << n;
    if rank == 0 || rank > d {
        return invalid(format!("rank {rank} outside [1, {d}]"));
    }
    let g = ginibre(d, rank, rng);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    Ok(DensityMatrix::from_trusted(m.unscale(tr)))
}

/// Random state with rank drawn uniformly from `1..=2^n`.
pub fn random_density_any_rank(n: usize, rng: &mut Rng) -> DensityMatrix {
    let rank = rng.random_range(1..=(1usize << n));
    random_density_with(n, rank, rng).expect("rank in range")
}

pub fn random_pure(n: usize, rng: &mut Rng) -> PureState {
    let v = CVec::from_fn(1 << n, |_, _| complex_gaussian(rng));
    let norm = v.norm();
    PureState::new(v.unscale(norm)).expect("normalized")
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
pub fn random_unitary(d: usize, rng: &mut Rng) -> CMat {
    let qr = ginibre(d, d, rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..d {
        let z = r[(j, j)];
        if z.norm() > 0.0 {
            let phase = z / z.norm();
            for i in 0..d {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Columns orthonormal, `rows ≥ cols`.
pub fn random_isometry(rows: usize, cols: usize, rng: &mut Rng) -> CMat {
    ginibre(rows, cols, rng).qr().q()
}

/// Flat Dirichlet sample, optionally with some coordinates forced to zero.
pub fn random_distribution(n: usize, sparse: bool, rng: &mut Rng) -> Distribution {
    let mut w: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    if sparse && n > 1 {
        let zeros = rng.random_range(0..n);
        for _ in 0..zeros {
            let i = rng.random_range(0..n);
            w[i] = 0.0;
        }
        if w.iter().all(|&x| x == 0.0) {
            w[0] = 1.0;
        }
    }
    let t: f64 = w.iter().sum();
    let mut p: Vec<f64> = w.into_iter().map(|x| x / t).collect();
    let drift: f64 = 1.0 - p.iter().sum::<f64>();
    let imax = (0..n).max_by(|&a, &b| p[a].total_cmp(&p[b])).unwrap_or(0);
    p[imax] += drift;
    Distribution::from_vec_unchecked(p)
}

/// Layers of random single-qubit rotations and a brick of CNOTs.
pub fn random_circuit(n_total: usize, outputs: Vec<usize>, layers: usize, rng: &mut Rng) -> GateCircuit {
    let mut c = GateCircuit::new(n_total, outputs);
    let angle = |rng: &mut Rng| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    for layer in 0..layers {
        for q in 0..n_total {
            let g = Gate::u3(q, angle(rng), angle(rng), angle(rng));
            c.push(g);
        }
        let start = layer % 2;
        let mut q = start;
        while q + 1 < n_total {
            c.push(Gate::cx(q, q + 1));
            q += 2;
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::{identity, max_abs};

    #[test]
    fn density_examples() {
        let rho = random_density(1, 1, 5).unwrap();
        let ev = rho.eigenvalues();
        assert!(ev[0].abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
        let full = random_density(3, 8, 9).unwrap();
        assert!(full.eigenvalues()[0] > 0.0);
        assert_eq!(random_density(2, 3, 11).unwrap(), random_density(2, 3, 11).unwrap());
        assert!(random_density(2, 0, 1).is_err());
        assert!(random_density(2, 5, 1).is_err());
        assert!(DensityMatrix::new(full.matrix().clone()).is_ok());
    }

    #[test]
    fn unitary_is_unitary() {
        let mut r = rng::seeded(3);
        let u = random_unitary(4, &mut r);
        assert!(max_abs(&(&u * u.adjoint() - identity(4))) < 1e-12);
        let v = random_isometry(8, 3, &mut r);
        assert!(max_abs(&(v.adjoint() * &v - identity(3))) < 1e-12);
    }

    #[test]
    fn distributions_are_valid() {
        let mut r = rng::seeded(4);
        for n in 1..8 {
            let p = random_distribution(n, true, &mut r);
            assert!(Distribution::new(p.into_vec()).is_ok());
        }
    }
}
