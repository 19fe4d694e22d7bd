use super::block::BlockEncoding;
use crate::error::{invalid, Error, Result};
use crate::qcore::linalg::{self};
use crate::qcore::DensityMatrix;

const CLAMP_SLACK: f64 = 1e-9;

fn trace_against(be: &BlockEncoding, rho: &DensityMatrix) -> Result<num_complex::Complex64> {
    if be.dim() != rho.dim() {
        return invalid(format!("encoding acts on dimension {}, state has {}", be.dim(), rho.dim()));
    }
    Ok(linalg::trace(&(be.block() * rho.matrix())))
}

fn to_probability(v: f64) -> Result<f64> {
    let p = 0.5 + 0.5 * v;
    if !(-CLAMP_SLACK..=1.0 + CLAMP_SLACK).contains(&p) {
        return Err(Error::Consistency(format!("Hadamard test probability {p} outside [0, 1]")));
    }
    Ok(p.clamp(0.0, 1.0))
}

/// Outcome-0 probability `½ + ½·Re tr(Aρ)` of the Hadamard test.
pub fn hadamard_prob(be: &BlockEncoding, rho: &DensityMatrix) -> Result<f64> {
    to_probability(trace_against(be, rho)?.re)
}

/// Phase-shifted variant, `½ + ½·Im tr(Aρ)`.
pub fn hadamard_prob_imag(be: &BlockEncoding, rho: &DensityMatrix) -> Result<f64> {
    to_probability(trace_against(be, rho)?.im)
}

/// Preparation-unitary uses in one Hadamard test: a controlled use of the
/// encoding plus one preparation of `ρ`.
pub fn hadamard_test_cost(be: &BlockEncoding) -> u64 {
    be.cost_per_use.saturating_add(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::{identity, kron, CMat, ONE};
    use crate::qcore::random_density;
    use crate::qsvtkit::block::block_encode_state;
    use approx::assert_abs_diff_eq;

    fn encoding(op: CMat) -> BlockEncoding {
        BlockEncoding { op, subnorm: 1.0, ancillas: 1, encode_err: 0.0, cost_per_use: 2 }
    }

    #[test]
    fn examples() {
        let rho = DensityMatrix::maximally_mixed(1);
        assert_abs_diff_eq!(hadamard_prob(&encoding(identity(2)), &rho).unwrap(), 1.0);
        assert_abs_diff_eq!(hadamard_prob(&encoding(-identity(2)), &rho).unwrap(), 0.0);
        assert_abs_diff_eq!(hadamard_prob(&encoding(rho.matrix().scale(0.25)), &rho).unwrap(), 0.5625);
        assert!(hadamard_prob(&encoding(identity(4)), &rho).is_err());
        assert!(matches!(
            hadamard_prob(&encoding(identity(2).scale(1.1)), &rho),
            Err(Error::Consistency(_))
        ));
    }

    /// Simulates the interference circuit on `|+⟩⟨+| ⊗ |0⟩⟨0| ⊗ ρ` with the dilation.
    fn circuit_level(be: &BlockEncoding, rho: &DensityMatrix, phase: bool) -> f64 {
        let u = be.dilation().unwrap();
        let d2 = u.nrows();
        let mut cu = CMat::identity(2 * d2, 2 * d2);
        cu.view_mut((d2, d2), (d2, d2)).copy_from(&u);
        let h = 0.5f64.sqrt();
        let plus = CMat::from_element(2, 2, ONE.scale(0.5));
        let flag0 = linalg::outer_basis(2, 0, 0);
        let state = kron(&plus, &kron(&flag0, rho.matrix()));
        let mut out = &cu * state * cu.adjoint();
        if phase {
            let mut sdg = CMat::identity(2, 2);
            sdg[(1, 1)] = -num_complex::Complex64::i();
            let s = kron(&sdg, &identity(d2));
            out = &s * out * s.adjoint();
        }
        let hm = CMat::from_row_slice(2, 2, &[ONE.scale(h), ONE.scale(h), ONE.scale(h), -ONE.scale(h)]);
        let hh = kron(&hm, &identity(d2));
        let out = &hh * out * hh.adjoint();
        (0..d2).map(|i| out[(i, i)].re).sum()
    }

    #[test]
    fn matches_interference_circuit() {
        for seed in 0..5 {
            let rho = random_density(2, 1 + seed as usize % 4, seed).unwrap();
            let a = random_density(2, 2, 100 + seed).unwrap();
            let be = block_encode_state(&a, 1);
            assert_abs_diff_eq!(hadamard_prob(&be, &rho).unwrap(), circuit_level(&be, &rho, false), epsilon = 1e-12);
            assert_abs_diff_eq!(hadamard_prob_imag(&be, &rho).unwrap(), circuit_level(&be, &rho, true), epsilon = 1e-12);
        }
    }

    #[test]
    fn half_shift_identity() {
        let rho = random_density(2, 4, 3).unwrap();
        let a = random_density(2, 4, 4).unwrap();
        let b = random_density(2, 1, 5).unwrap();
        let pa = hadamard_prob(&block_encode_state(&a, 1), &rho).unwrap();
        let pb = hadamard_prob(&block_encode_state(&b, 1), &rho).unwrap();
        let mix = encoding((a.matrix() + b.matrix()).scale(0.5));
        assert_abs_diff_eq!(hadamard_prob(&mix, &rho).unwrap(), 0.5 * (pa + pb), epsilon = 1e-15);
    }
}
