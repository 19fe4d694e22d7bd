//! Dense statevector simulation of small gate circuits.
//!
//! Gates are `{name, targets, params}` over `h x z s t rx ry rz cx ccx u3`.
//! `cx` takes `[control, target]` and `ccx` takes `[c1, c2, target]`. Any gate
//! may also carry extra `controls`, which is how controlled sub-circuits are
//! emitted.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

use super::linalg::{CVec, ONE, ZERO};
use super::state::{reduce_pure, DensityMatrix};
use crate::error::{invalid, Error, Result};

pub const DEFAULT_SIM_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub name: String,
    pub targets: Vec<usize>,
    #[serde(default)]
    pub params: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub controls: Vec<usize>,
}

impl Gate {
    pub fn new(name: &str, targets: &[usize], params: &[f64]) -> Self {
        Gate { name: name.to_string(), targets: targets.to_vec(), params: params.to_vec(), controls: Vec::new() }
    }

    pub fn h(q: usize) -> Self {
        Gate::new("h", &[q], &[])
    }

    pub fn x(q: usize) -> Self {
        Gate::new("x", &[q], &[])
    }

    pub fn ry(q: usize, theta: f64) -> Self {
        Gate::new("ry", &[q], &[theta])
    }

    pub fn cx(c: usize, t: usize) -> Self {
        Gate::new("cx", &[c, t], &[])
    }

    pub fn u3(q: usize, theta: f64, phi: f64, lambda: f64) -> Self {
        Gate::new("u3", &[q], &[theta, phi, lambda])
    }

    fn arity(&self) -> Option<(usize, usize)> {
        let a = match self.name.as_str() {
            "h" | "x" | "z" | "s" | "t" => (1, 0),
            "rx" | "ry" | "rz" => (1, 1),
            "u3" => (1, 3),
            "cx" => (2, 0),
            "ccx" => (3, 0),
            _ => return None,
        };
        Some(a)
    }

    /// The 2×2 action on the last target, row-major.
    fn matrix(&self) -> [Complex64; 4] {
        let i = Complex64::i();
        let p = &self.params;
        match self.name.as_str() {
            "h" => {
                let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
                [h, h, h, -h]
            }
            "x" | "cx" | "ccx" => [ZERO, ONE, ONE, ZERO],
            "z" => [ONE, ZERO, ZERO, -ONE],
            "s" => [ONE, ZERO, ZERO, i],
            "t" => [ONE, ZERO, ZERO, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)],
            "rx" => {
                let (c, s) = ((p[0] / 2.0).cos(), (p[0] / 2.0).sin());
                [Complex64::new(c, 0.0), -i * s, -i * s, Complex64::new(c, 0.0)]
            }
            "ry" => {
                let (c, s) = ((p[0] / 2.0).cos(), (p[0] / 2.0).sin());
                [Complex64::new(c, 0.0), Complex64::new(-s, 0.0), Complex64::new(s, 0.0), Complex64::new(c, 0.0)]
            }
            "rz" => [Complex64::from_polar(1.0, -p[0] / 2.0), ZERO, ZERO, Complex64::from_polar(1.0, p[0] / 2.0)],
            "u3" => {
                let (c, s) = ((p[0] / 2.0).cos(), (p[0] / 2.0).sin());
                [
                    Complex64::new(c, 0.0),
                    -Complex64::from_polar(s, p[2]),
                    Complex64::from_polar(s, p[1]),
                    Complex64::from_polar(c, p[1] + p[2]),
                ]
            }
            _ => unreachable!("validated gate name"),
        }
    }

    /// Control qubits (built-in and extra) and the acted-on target.
    fn split(&self) -> (Vec<usize>, usize) {
        let (last, built_in) = self.targets.split_last().expect("validated arity");
        let mut controls = built_in.to_vec();
        controls.extend_from_slice(&self.controls);
        (controls, *last)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateCircuit {
    #[serde(rename = "n")]
    pub n_total: usize,
    #[serde(rename = "outputs")]
    pub output_qubits: Vec<usize>,
    pub gates: Vec<Gate>,
}

impl GateCircuit {
    pub fn new(n_total: usize, output_qubits: Vec<usize>) -> Self {
        GateCircuit { n_total, output_qubits, gates: Vec::new() }
    }

    pub fn push(&mut self, g: Gate) -> &mut Self {
        self.gates.push(g);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.output_qubits.is_empty() {
            return invalid("circuit needs at least one output qubit");
        }
        for (i, &q) in self.output_qubits.iter().enumerate() {
            if q >= self.n_total {
                return invalid(format!("output qubit {q} out of range"));
            }
            if self.output_qubits[..i].contains(&q) {
                return invalid(format!("output qubit {q} listed twice"));
            }
        }
        for (gi, g) in self.gates.iter().enumerate() {
            let Some((nt, np)) = g.arity() else {
                return invalid(format!("unknown gate '{}' at position {gi}", g.name));
            };
            if g.targets.len() != nt || g.params.len() != np {
                return invalid(format!(
                    "gate '{}' at position {gi} needs {nt} targets and {np} params",
                    g.name
                ));
            }
            if g.params.iter().any(|p| !p.is_finite()) {
                return invalid(format!("gate '{}' at position {gi} has a non-finite parameter", g.name));
            }
            let all: Vec<usize> = g.targets.iter().chain(&g.controls).copied().collect();
            for (i, &q) in all.iter().enumerate() {
                if q >= self.n_total {
                    return invalid(format!("gate '{}' at position {gi} touches qubit {q} out of range", g.name));
                }
                if all[..i].contains(&q) {
                    return invalid(format!("gate '{}' at position {gi} repeats qubit {q}", g.name));
                }
            }
        }
        Ok(())
    }

    /// Gates of `self` relabelled through `map` (old qubit → new qubit) with
    /// `controls` added to each gate.
    pub fn embedded_gates(&self, map: &[usize], controls: &[usize]) -> Vec<Gate> {
        self.gates
            .iter()
            .map(|g| {
                let mut ng = g.clone();
                ng.targets = g.targets.iter().map(|&q| map[q]).collect();
                ng.controls = g.controls.iter().map(|&q| map[q]).chain(controls.iter().copied()).collect();
                ng
            })
            .collect()
    }
}

pub fn simulate(circuit: &GateCircuit) -> Result<CVec> {
    simulate_with_cap(circuit, DEFAULT_SIM_CAP)
}

pub fn simulate_with_cap(circuit: &GateCircuit, cap: usize) -> Result<CVec> {
    if circuit.n_total > cap {
        return Err(Error::Resource(format!(
            "circuit on {} qubits exceeds the simulator cap of {cap}",
            circuit.n_total
        )));
    }
    circuit.validate()?;
    let n = circuit.n_total;
    let mut psi = CVec::from_element(1 << n, ZERO);
    psi[0] = ONE;
    for g in &circuit.gates {
        let (controls, target) = g.split();
        let m = g.matrix();
        let tbit = 1usize << (n - 1 - target);
        let cmask: usize = controls.iter().map(|&c| 1usize << (n - 1 - c)).sum();
        for i in 0..psi.len() {
            if i & tbit != 0 || i & cmask != cmask {
                continue;
            }
            let (a, b) = (psi[i], psi[i | tbit]);
            psi[i] = m[0] * a + m[1] * b;
            psi[i | tbit] = m[2] * a + m[3] * b;
        }
    }
    Ok(psi)
}

/// Runs the circuit on `|0…0⟩` and traces out every non-output qubit.
pub fn prepare_state(circuit: &GateCircuit) -> Result<DensityMatrix> {
    prepare_state_with_cap(circuit, DEFAULT_SIM_CAP)
}

pub fn prepare_state_with_cap(circuit: &GateCircuit, cap: usize) -> Result<DensityMatrix> {
    let psi = simulate_with_cap(circuit, cap)?;
    reduce_pure(&psi, circuit.n_total, &circuit.output_qubits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::max_abs;
    use approx::assert_abs_diff_eq;

    #[test]
    fn small_circuits() {
        let c = GateCircuit::new(2, vec![0, 1]);
        let rho = prepare_state(&c).unwrap();
        assert_abs_diff_eq!(rho.matrix()[(0, 0)].re, 1.0);

        let mut c = GateCircuit::new(2, vec![0]);
        c.push(Gate::h(0));
        let rho = prepare_state(&c).unwrap();
        for z in rho.matrix().iter() {
            assert_abs_diff_eq!(z.re, 0.5, epsilon = 1e-15);
        }

        c.push(Gate::cx(0, 1));
        let rho = prepare_state(&c).unwrap();
        assert!(max_abs(&(rho.matrix() - DensityMatrix::maximally_mixed(1).matrix())) < 1e-15);
    }

    #[test]
    fn errors() {
        let mut c = GateCircuit::new(13, vec![0]);
        assert!(matches!(prepare_state(&c), Err(Error::Resource(_))));
        c.n_total = 2;
        c.push(Gate::new("swap", &[0, 1], &[]));
        assert!(matches!(prepare_state(&c), Err(Error::InvalidInput(_))));
        let mut c = GateCircuit::new(2, vec![0]);
        c.push(Gate::cx(1, 1));
        assert!(prepare_state(&c).is_err());
        let mut c = GateCircuit::new(2, vec![0]);
        c.push(Gate::new("rx", &[0], &[]));
        assert!(prepare_state(&c).is_err());
        assert!(prepare_state(&GateCircuit::new(2, vec![])).is_err());
    }

    #[test]
    fn extra_controls_match_ccx() {
        let mut a = GateCircuit::new(3, vec![0, 1, 2]);
        a.push(Gate::x(0)).push(Gate::x(1)).push(Gate::new("ccx", &[0, 1, 2], &[]));
        let mut b = GateCircuit::new(3, vec![0, 1, 2]);
        let mut g = Gate::cx(1, 2);
        g.controls = vec![0];
        b.push(Gate::x(0)).push(Gate::x(1)).push(g);
        let (sa, sb) = (simulate(&a).unwrap(), simulate(&b).unwrap());
        assert_abs_diff_eq!(sa[7].re, 1.0);
        assert_abs_diff_eq!(sb[7].re, 1.0);
    }

    #[test]
    fn rotations_are_unitary() {
        let mut c = GateCircuit::new(2, vec![0, 1]);
        c.push(Gate::u3(0, 0.3, 1.1, -0.4))
            .push(Gate::new("rx", &[1], &[0.7]))
            .push(Gate::new("rz", &[0], &[2.0]))
            .push(Gate::new("s", &[1], &[]))
            .push(Gate::new("t", &[0], &[]))
            .push(Gate::new("z", &[1], &[]))
            .push(Gate::cx(0, 1));
        assert_abs_diff_eq!(simulate(&c).unwrap().norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn json_shape() {
        let mut c = GateCircuit::new(2, vec![0]);
        c.push(Gate::h(0)).push(Gate::cx(0, 1));
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["outputs"][0], 0);
        assert_eq!(v["gates"][1]["name"], "cx");
        assert!(v["gates"][1].get("controls").is_none());
        let back: GateCircuit = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }
}
