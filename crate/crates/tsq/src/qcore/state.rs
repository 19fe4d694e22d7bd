use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::entropy::{tsallis_of_slice, Distribution};
use super::linalg::{self, CMat, CVec, ONE, ZERO};
use crate::error::{domain, invalid, Result};

pub const STATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    mat: CMat,
}

fn qubits_for(dim: usize) -> Option<usize> {
    (dim.is_power_of_two()).then(|| dim.trailing_zeros() as usize)
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity, each to `1e−12`.
    pub fn new(mat: CMat) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return invalid("density matrix must be square");
        }
        let Some(n) = qubits_for(mat.nrows()) else {
            return invalid(format!("dimension {} is not a power of two", mat.nrows()));
        };
        if mat.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return invalid("density matrix entries must be finite");
        }
        let herm = linalg::hermiticity_defect(&mat);
        if herm > STATE_TOL {
            return invalid(format!("matrix is not Hermitian (defect {herm:e})"));
        }
        let tr = linalg::trace(&mat);
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return invalid(format!("trace is {tr}, not 1"));
        }
        let mat = linalg::hermitize(&mat);
        let min = linalg::herm_eigenvalues(&mat).first().copied().unwrap_or(0.0);
        if min < -STATE_TOL {
            return invalid(format!("matrix has negative eigenvalue {min:e}"));
        }
        Ok(DensityMatrix { n, mat })
    }

    /// For matrices that are density operators by construction; only symmetrizes.
    pub(crate) fn from_trusted(mat: CMat) -> Self {
        let n = qubits_for(mat.nrows()).expect("power-of-two dimension");
        DensityMatrix { n, mat: linalg::hermitize(&mat) }
    }

    pub fn maximally_mixed(n: usize) -> Self {
        let d = 1usize << n;
        DensityMatrix { n, mat: linalg::identity(d).scale(1.0 / d as f64) }
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        let d = 1usize << n;
        if index >= d {
            return invalid(format!("basis index {index} out of range for {n} qubits"));
        }
        Ok(DensityMatrix { n, mat: linalg::outer_basis(d, index, index) })
    }

    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let p = Distribution::new(probs.to_vec())?;
        let Some(n) = qubits_for(p.len()) else {
            return invalid(format!("dimension {} is not a power of two", p.len()));
        };
        let mat = CMat::from_diagonal(&CVec::from_iterator(p.len(), p.probs().iter().map(|&x| linalg::real(x))));
        Ok(DensityMatrix { n, mat })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let a = &psi.amps;
        DensityMatrix { n: psi.n, mat: a * a.adjoint() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn into_matrix(self) -> CMat {
        self.mat
    }

    /// Spectrum with negative round-off clipped to zero, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::herm_eigenvalues(&self.mat).into_iter().map(|l| l.max(0.0)).collect()
    }

    pub fn spectrum(&self) -> Distribution {
        Distribution::from_vec_unchecked(self.eigenvalues())
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.eigenvalues().iter().filter(|&&l| l > tol).count()
    }

    /// `tr(ρ^q)`.
    pub fn trace_power(&self, q: f64) -> f64 {
        self.eigenvalues().iter().filter(|&&l| l > 0.0).map(|l| l.powf(q)).sum()
    }

    /// `ρ^q` by spectral calculus.
    pub fn power(&self, q: f64) -> CMat {
        linalg::herm_apply(&self.mat, |l| if l > 0.0 { l.powf(q) } else { 0.0 })
    }

    pub fn tsallis(&self, q: f64) -> Result<f64> {
        if !(q > 0.0) {
            return domain(format!("Tsallis entropy needs q > 0, got {q}"));
        }
        Ok(tsallis_of_slice(&self.eigenvalues(), q))
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix { n: self.n + other.n, mat: linalg::kron(&self.mat, &other.mat) }
    }

    /// `w·self + (1 − w)·other`.
    pub fn mix(&self, other: &DensityMatrix, w: f64) -> Result<DensityMatrix> {
        if self.dim() != other.dim() {
            return invalid("dimension mismatch");
        }
        if !(0.0..=1.0).contains(&w) {
            return invalid(format!("mixing weight {w} outside [0, 1]"));
        }
        Ok(DensityMatrix { n: self.n, mat: self.mat.scale(w) + other.mat.scale(1.0 - w) })
    }

    /// `U·ρ·U†` for a unitary `U`.
    pub fn conjugate(&self, u: &CMat) -> Result<DensityMatrix> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return invalid("unitary has the wrong dimension");
        }
        Ok(DensityMatrix::from_trusted(u * &self.mat * u.adjoint()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amps: CVec,
}

impl PureState {
    pub fn new(amps: CVec) -> Result<Self> {
        let Some(n) = qubits_for(amps.len()) else {
            return invalid(format!("dimension {} is not a power of two", amps.len()));
        };
        let norm2 = amps.norm_squared();
        if (norm2 - 1.0).abs() > STATE_TOL {
            return invalid(format!("squared norm is {norm2}, not 1"));
        }
        Ok(PureState { n, amps })
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        let d = 1usize << n;
        if index >= d {
            return invalid(format!("basis index {index} out of range for {n} qubits"));
        }
        let mut amps = CVec::from_element(d, ZERO);
        amps[index] = ONE;
        Ok(PureState { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &CVec {
        &self.amps
    }

    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.amps.len() != other.amps.len() {
            return invalid("dimension mismatch");
        }
        Ok(self.amps.dotc(&other.amps))
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }
}

/// Bit masks of the basis indices restricted to `keep` (in the listed order,
/// first listed qubit most significant) and to the remaining qubits.
pub(crate) fn split_masks(n: usize, keep: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let env: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let expand = |qubits: &[usize]| -> Vec<usize> {
        let m = qubits.len();
        (0..1usize << m)
            .map(|a| {
                let mut idx = 0usize;
                for (pos, &qb) in qubits.iter().enumerate() {
                    if (a >> (m - 1 - pos)) & 1 == 1 {
                        idx |= 1 << (n - 1 - qb);
                    }
                }
                idx
            })
            .collect()
    };
    (expand(keep), expand(&env))
}

pub(crate) fn check_subsystem(n: usize, keep: &[usize]) -> Result<()> {
    if keep.is_empty() {
        return invalid("at least one qubit must be kept");
    }
    for (i, &q) in keep.iter().enumerate() {
        if q >= n {
            return invalid(format!("qubit {q} out of range for {n} qubits"));
        }
        if keep[..i].contains(&q) {
            return invalid(format!("qubit {q} listed twice"));
        }
    }
    Ok(())
}

/// Reduced state on `keep`; the output tensor factors follow the listed order.
/// Qubit 0 is the most significant bit of a basis index.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    check_subsystem(rho.n, keep)?;
    let (kp, ep) = split_masks(rho.n, keep);
    let m = &rho.mat;
    let out = CMat::from_fn(kp.len(), kp.len(), |a, b| ep.iter().map(|&e| m[(kp[a] | e, kp[b] | e)]).sum());
    Ok(DensityMatrix::from_trusted(out))
}

/// Reduced state of a pure state on `keep`, as `ΨΨ†` with `Ψ[a, e] = ψ(a, e)`.
pub(crate) fn reduce_pure(amps: &CVec, n: usize, keep: &[usize]) -> Result<DensityMatrix> {
    check_subsystem(n, keep)?;
    let (kp, ep) = split_masks(n, keep);
    let psi = CMat::from_fn(kp.len(), ep.len(), |a, e| amps[kp[a] | ep[e]]);
    Ok(DensityMatrix::from_trusted(&psi * psi.adjoint()))
}

pub fn trace_distance(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<f64> {
    if rho0.dim() != rho1.dim() {
        return invalid("dimension mismatch");
    }
    Ok(0.5 * linalg::trace_norm_herm(&(&rho0.mat - &rho1.mat)))
}

/// `S_q((ρ₀+ρ₁)/2) − (S_q(ρ₀) + S_q(ρ₁))/2`.
pub fn qjt_divergence(rho0: &DensityMatrix, rho1: &DensityMatrix, q: f64) -> Result<f64> {
    if rho0.dim() != rho1.dim() {
        return invalid("dimension mismatch");
    }
    let mid = DensityMatrix::from_trusted((&rho0.mat + &rho1.mat).scale(0.5));
    Ok(mid.tsallis(q)? - 0.5 * (rho0.tsallis(q)? + rho1.tsallis(q)?))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Density,
    Pure,
}

/// Wire format `{"n", "kind", "data": [[re, im], …]}` with row-major data.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StateJson {
    pub n: usize,
    pub kind: StateKind,
    pub data: Vec<[f64; 2]>,
}

impl StateJson {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let d = rho.dim();
        let data = (0..d * d).map(|i| {
            let z = rho.mat[(i / d, i % d)];
            [z.re, z.im]
        });
        StateJson { n: rho.n, kind: StateKind::Density, data: data.collect() }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        StateJson { n: psi.n, kind: StateKind::Pure, data: psi.amps.iter().map(|z| [z.re, z.im]).collect() }
    }

    pub fn to_pure(&self) -> Result<PureState> {
        if self.kind != StateKind::Pure {
            return invalid("expected a pure state (kind \"pure\")");
        }
        let d = 1usize << self.n;
        if self.data.len() != d {
            return invalid(format!("expected {d} amplitudes, got {}", self.data.len()));
        }
        PureState::new(CVec::from_iterator(d, self.data.iter().map(|[re, im]| Complex64::new(*re, *im))))
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        let d = 1usize << self.n;
        let z: Vec<Complex64> = self.data.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        match self.kind {
            StateKind::Density => {
                if z.len() != d * d {
                    return invalid(format!("expected {} entries for a {d}x{d} matrix, got {}", d * d, z.len()));
                }
                DensityMatrix::new(CMat::from_row_slice(d, d, &z))
            }
            StateKind::Pure => {
                if z.len() != d {
                    return invalid(format!("expected {d} amplitudes, got {}", z.len()));
                }
                Ok(PureState::new(CVec::from_vec(z))?.density())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn plus() -> PureState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        PureState::new(CVec::from_vec(vec![linalg::real(h), linalg::real(h)])).unwrap()
    }

    #[test]
    fn validation() {
        assert!(DensityMatrix::new(CMat::identity(3, 3).scale(1.0 / 3.0)).is_err());
        assert!(DensityMatrix::new(CMat::identity(2, 2)).is_err());
        let mut m = CMat::zeros(2, 2);
        m[(0, 0)] = linalg::real(1.5);
        m[(1, 1)] = linalg::real(-0.5);
        assert!(DensityMatrix::new(m).is_err());
        let mut m = CMat::identity(2, 2).scale(0.5);
        m[(0, 1)] = Complex64::new(0.0, 0.1);
        assert!(DensityMatrix::new(m).is_err());
        assert!(PureState::new(CVec::from_element(2, ONE)).is_err());
    }

    #[test]
    fn distances() {
        let z = DensityMatrix::basis(1, 0).unwrap();
        let o = DensityMatrix::basis(1, 1).unwrap();
        assert_abs_diff_eq!(trace_distance(&z, &z).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(trace_distance(&z, &o).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(trace_distance(&z, &plus().density()).unwrap(), 0.5f64.sqrt(), epsilon = 1e-12);
        assert!(trace_distance(&z, &DensityMatrix::maximally_mixed(2)).is_err());
        assert_abs_diff_eq!(qjt_divergence(&z, &o, 2.0).unwrap(), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(qjt_divergence(&o, &o, 1.4).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn partial_trace_order() {
        // |01⟩: qubit 0 in |0⟩, qubit 1 in |1⟩
        let rho = DensityMatrix::basis(2, 1).unwrap();
        let r0 = partial_trace(&rho, &[0]).unwrap();
        let r1 = partial_trace(&rho, &[1]).unwrap();
        assert_abs_diff_eq!(r0.matrix()[(0, 0)].re, 1.0);
        assert_abs_diff_eq!(r1.matrix()[(1, 1)].re, 1.0);
        let swapped = partial_trace(&rho, &[1, 0]).unwrap();
        assert_abs_diff_eq!(swapped.matrix()[(2, 2)].re, 1.0);
        assert!(partial_trace(&rho, &[0, 0]).is_err());
        assert!(partial_trace(&rho, &[2]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let rho = DensityMatrix::from_pure(&plus()).tensor(&DensityMatrix::maximally_mixed(1));
        let js = serde_json::to_string(&StateJson::from_density(&rho)).unwrap();
        let back: StateJson = serde_json::from_str(&js).unwrap();
        assert_eq!(back.to_density().unwrap(), rho);
        let pj = StateJson::from_pure(&plus());
        assert!(linalg::max_abs(&(pj.to_density().unwrap().matrix() - plus().density().matrix())) < 1e-15);
    }

    #[test]
    fn power_matches_spectrum() {
        let rho = DensityMatrix::diagonal(&[0.7, 0.3]).unwrap();
        assert_abs_diff_eq!(rho.trace_power(1.5), 0.7f64.powf(1.5) + 0.3f64.powf(1.5), epsilon = 1e-14);
        let p = rho.power(2.0);
        assert_abs_diff_eq!(p[(0, 0)].re, 0.49, epsilon = 1e-14);
    }
}
