//! Circuits and states of the flag-qubit constructions.
//!
//! Emitted circuits put the output flag on qubit 0, its purifier on qubit 1,
//! a selector on qubit 2 and the input circuit's qubits from 3 on.

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::qcore::linalg::CMat;
use crate::qcore::{DensityMatrix, Gate, GateCircuit};

const FLAG: usize = 0;
const PURIFIER: usize = 1;
const SELECTOR: usize = 2;
const OFFSET: usize = 3;

fn check_pair(c0: &GateCircuit, c1: &GateCircuit) -> Result<()> {
    c0.validate()?;
    c1.validate()?;
    if c0.output_qubits.len() != c1.output_qubits.len() {
        return invalid("input circuits differ in output size");
    }
    Ok(())
}

/// Appends `c` on the shifted register, controlled on `ctrl` being `value`.
fn push_controlled(out: &mut GateCircuit, c: &GateCircuit, ctrl: usize, value: bool) {
    if !value {
        out.push(Gate::x(ctrl));
    }
    let map: Vec<usize> = (0..c.n_total).map(|q| q + OFFSET).collect();
    out.gates.extend(c.embedded_gates(&map, &[ctrl]));
    if !value {
        out.push(Gate::x(ctrl));
    }
}

/// Output order: flag, then the outputs of `c0` (the two inputs share a layout).
fn frame(c0: &GateCircuit, c1: &GateCircuit) -> GateCircuit {
    let width = c0.n_total.max(c1.n_total) + OFFSET;
    let outputs = std::iter::once(FLAG).chain(c0.output_qubits.iter().map(|q| q + OFFSET)).collect();
    GateCircuit::new(width, outputs)
}

/// Prepares `(p|0⟩⟨0| + (1−p)|1⟩⟨1|) ⊗ (ρ₀ + ρ₁)/2`.
pub fn product_circuit(c0: &GateCircuit, c1: &GateCircuit, p: f64) -> Result<GateCircuit> {
    check_pair(c0, c1)?;
    if c0.output_qubits != c1.output_qubits {
        return invalid("input circuits must use the same output qubits");
    }
    let mut out = frame(c0, c1);
    out.push(Gate::ry(FLAG, 2.0 * p.clamp(0.0, 1.0).sqrt().acos()));
    out.push(Gate::cx(FLAG, PURIFIER));
    out.push(Gate::h(SELECTOR));
    push_controlled(&mut out, c0, SELECTOR, false);
    push_controlled(&mut out, c1, SELECTOR, true);
    Ok(out)
}

/// Prepares `½|0⟩⟨0| ⊗ ρ₀ + ½|1⟩⟨1| ⊗ ρ₁`.
pub fn flagged_circuit(c0: &GateCircuit, c1: &GateCircuit) -> Result<GateCircuit> {
    check_pair(c0, c1)?;
    if c0.output_qubits != c1.output_qubits {
        return invalid("input circuits must use the same output qubits");
    }
    let mut out = frame(c0, c1);
    out.push(Gate::ry(FLAG, PI / 2.0));
    out.push(Gate::cx(FLAG, PURIFIER));
    push_controlled(&mut out, c0, FLAG, false);
    push_controlled(&mut out, c1, FLAG, true);
    Ok(out)
}

pub fn product_state(rho0: &DensityMatrix, rho1: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    let flag = DensityMatrix::diagonal(&[p, 1.0 - p])?;
    Ok(flag.tensor(&rho0.mix(rho1, 0.5)?))
}

pub fn flagged_state(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<DensityMatrix> {
    if rho0.dim() != rho1.dim() {
        return invalid("dimension mismatch");
    }
    let d = rho0.dim();
    let mut m = CMat::zeros(2 * d, 2 * d);
    m.view_mut((0, 0), (d, d)).copy_from(&rho0.matrix().scale(0.5));
    m.view_mut((d, d), (d, d)).copy_from(&rho1.matrix().scale(0.5));
    DensityMatrix::new(m)
}
