use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Gate, GateKind};
use crate::error::{Error, Result};
use crate::pauli::PauliTermSum;

/// Largest register the simulator allocates.
pub const SIM_LIMIT: usize = 26;

/// Branch probabilities at or below this value are treated as exactly zero.
pub const ZERO_BRANCH_TOL: f64 = 1e-24;

const NORM_TOL: f64 = 1e-10;

/// A normalized pure state; qubit 0 is the least-significant index bit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

enum Kernel {
    /// Multiplies the |1> component of the target.
    Diagonal(Complex64),
    General([[Complex64; 2]; 2]),
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ry(angle: f64) -> [[Complex64; 2]; 2] {
    let (s, co) = (angle / 2.0).sin_cos();
    [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
}

fn kernel(kind: GateKind) -> Kernel {
    use std::f64::consts::FRAC_1_SQRT_2 as R;
    match kind {
        GateKind::H => Kernel::General([[c(R, 0.0), c(R, 0.0)], [c(R, 0.0), c(-R, 0.0)]]),
        GateKind::X | GateKind::CNOT => Kernel::General([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]),
        GateKind::Z | GateKind::CZ => Kernel::Diagonal(c(-1.0, 0.0)),
        GateKind::S | GateKind::CS => Kernel::Diagonal(c(0.0, 1.0)),
        GateKind::Sdg | GateKind::CSdg => Kernel::Diagonal(c(0.0, -1.0)),
        GateKind::T => Kernel::Diagonal(c(R, R)),
        GateKind::Tdg => Kernel::Diagonal(c(R, -R)),
        GateKind::Phase(a) => Kernel::Diagonal(Complex64::from_polar(1.0, a)),
        GateKind::RY(a) | GateKind::CRY(a) => Kernel::General(ry(a)),
    }
}

impl StateVector {
    fn check_size(n_qubits: usize) -> Result<()> {
        if n_qubits > SIM_LIMIT {
            return Err(Error::DimensionLimit {
                n_qubits,
                limit: SIM_LIMIT,
                what: "statevector simulation",
            });
        }
        Ok(())
    }

    /// Computational basis state `|k>`.
    pub fn basis(n_qubits: usize, k: u64) -> Result<Self> {
        Self::check_size(n_qubits)?;
        let dim = 1usize << n_qubits;
        if k as usize >= dim {
            return Err(Error::IndexOutOfRange {
                index: k as usize,
                bound: dim,
                what: "basis states",
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[k as usize] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    /// Normalizes `amps`, whose length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if !dim.is_power_of_two() {
            return Err(Error::InvalidInput(format!("{dim} amplitudes is not a power of two")));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        Self::check_size(n_qubits)?;
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::ZeroVector);
        }
        let amps = amps.into_iter().map(|a| a / norm).collect();
        Ok(StateVector { n_qubits, amps })
    }

    /// Uniformly random state from a seeded generator.
    pub fn random(n_qubits: usize, rng: &mut impl Rng) -> Result<Self> {
        Self::check_size(n_qubits)?;
        let amps = (0..1usize << n_qubits)
            .map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        Self::from_amplitudes(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|<self|other>|`
    pub fn overlap(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    /// `1 - |<self|other>|^2`
    pub fn infidelity(&self, other: &StateVector) -> Result<f64> {
        Ok((1.0 - self.inner(other)?.norm_sqr()).max(0.0))
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::IndexOutOfRange {
                index: q,
                bound: self.n_qubits,
                what: "qubits",
            });
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        for q in gate.qubits() {
            self.check_qubit(q)?;
        }
        if gate.control == Some(gate.target) || gate.kind.is_controlled() != gate.control.is_some() {
            return Err(Error::InvalidCircuit(format!("malformed gate {gate:?}")));
        }
        let tbit = 1usize << gate.target;
        let cmask = gate.control.map_or(0, |q| 1usize << q);
        match kernel(gate.kind) {
            Kernel::Diagonal(phase) => {
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & tbit != 0 && i & cmask == cmask {
                        *a *= phase;
                    }
                }
            }
            Kernel::General(m) => {
                for i in 0..self.amps.len() {
                    if i & tbit != 0 || i & cmask != cmask {
                        continue;
                    }
                    let (a0, a1) = (self.amps[i], self.amps[i | tbit]);
                    self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                    self.amps[i | tbit] = m[1][0] * a0 + m[1][1] * a1;
                }
            }
        }
        Ok(())
    }

    /// Probability that measuring `qubit` yields `outcome`.
    pub fn probability(&self, qubit: usize, outcome: u8) -> Result<f64> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        let want = if outcome == 0 { 0 } else { bit };
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit == want)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    fn rotate(&mut self, qubit: usize, pre_rotation: Option<f64>) -> Result<()> {
        if let Some(angle) = pre_rotation {
            self.apply_gate(&Gate::single(GateKind::RY(angle), qubit))?;
        }
        Ok(())
    }

    fn collapse(&mut self, qubit: usize, outcome: u8, probability: f64) {
        let bit = 1usize << qubit;
        let keep = if outcome == 0 { 0 } else { bit };
        let scale = 1.0 / probability.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & bit == keep {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
    }

    /// Rotates by `RY(pre_rotation)`, projects `qubit` onto `outcome` and
    /// renormalizes, returning the branch probability. A zero-probability
    /// branch is an error and leaves the state rotated but unprojected.
    pub fn project(&mut self, qubit: usize, outcome: u8, pre_rotation: Option<f64>) -> Result<f64> {
        if outcome > 1 {
            return Err(Error::InvalidInput(format!("outcome {outcome} is not a bit")));
        }
        self.check_qubit(qubit)?;
        self.rotate(qubit, pre_rotation)?;
        let p = self.probability(qubit, outcome)?;
        if p <= ZERO_BRANCH_TOL {
            return Err(Error::ZeroBranch { qubit, outcome });
        }
        self.collapse(qubit, outcome, p);
        Ok(p)
    }

    /// Non-mutating form of [`StateVector::project`].
    pub fn measure_project(&self, qubit: usize, outcome: u8, pre_rotation: Option<f64>) -> Result<(StateVector, f64)> {
        let mut out = self.clone();
        let p = out.project(qubit, outcome, pre_rotation)?;
        Ok((out, p))
    }

    /// Samples a measurement outcome and collapses onto it.
    pub fn measure_sample(&mut self, qubit: usize, pre_rotation: Option<f64>, rng: &mut impl Rng) -> Result<u8> {
        self.check_qubit(qubit)?;
        self.rotate(qubit, pre_rotation)?;
        let p0 = self.probability(qubit, 0)?;
        let outcome = if rng.gen::<f64>() < p0 { 0 } else { 1 };
        let p = if outcome == 0 { p0 } else { 1.0 - p0 };
        self.collapse(qubit, outcome, p);
        Ok(outcome)
    }

    /// Returns `qubit`, which must be in a computational basis state, to |0>.
    pub fn reset(&mut self, qubit: usize) -> Result<()> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        for i in 0..self.amps.len() {
            if i & bit != 0 {
                let a = std::mem::take(&mut self.amps[i]);
                self.amps[i & !bit] += a;
            }
        }
        let norm = self.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidCircuit(format!(
                "reset of qubit {qubit}, which is in a superposition"
            )));
        }
        Ok(())
    }

    /// Appends `n_extra` qubits in |0> above the existing ones.
    pub fn extend(&self, n_extra: usize) -> Result<StateVector> {
        Self::check_size(self.n_qubits + n_extra)?;
        let mut amps = self.amps.clone();
        amps.resize(1usize << (self.n_qubits + n_extra), Complex64::new(0.0, 0.0));
        Ok(StateVector {
            n_qubits: self.n_qubits + n_extra,
            amps,
        })
    }

    /// The state of the lowest `n_low` qubits, provided the remaining qubits
    /// are in a computational basis state.
    pub fn split_low(&self, n_low: usize) -> Result<StateVector> {
        if n_low > self.n_qubits {
            return Err(Error::IndexOutOfRange {
                index: n_low,
                bound: self.n_qubits,
                what: "qubits",
            });
        }
        let (argmax, _) = self
            .amps
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
            .expect("non-empty state");
        let high = argmax >> n_low;
        let start = high << n_low;
        let block = self.amps[start..start + (1usize << n_low)].to_vec();
        let weight: f64 = block.iter().map(|a| a.norm_sqr()).sum();
        if (weight - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidCircuit(format!(
                "upper qubits are not in a basis state (weight {weight})"
            )));
        }
        StateVector::from_amplitudes(block)
    }
}

/// `<psi|op|psi>` for a Hermitian operator.
pub fn expectation(state: &StateVector, op: &PauliTermSum) -> Result<f64> {
    if op.n_qubits() != state.n_qubits {
        return Err(Error::QubitCountMismatch {
            left: op.n_qubits(),
            right: state.n_qubits,
        });
    }
    op.require_hermitian(1e-10)?;
    let image = op.apply(&state.amps)?;
    let value: Complex64 = state.amps.iter().zip(&image).map(|(a, b)| a.conj() * b).sum();
    let scale = op.iter().map(|(_, c)| c.norm()).sum::<f64>().max(1.0);
    if value.im.abs() > 1e-10 * scale {
        return Err(Error::NonHermitian {
            max_imag: value.im.abs(),
        });
    }
    Ok(value.re)
}
