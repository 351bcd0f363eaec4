use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::MolecularIntegrals;
use crate::error::{Error, Result};
use crate::fermion::{jw_transform, FermionFactor, FermionProduct};
use crate::pauli::{PauliTermSum, MAX_QUBITS};

/// Tolerance on the imaginary parts of a Hamiltonian's coefficients.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// A qubit Hamiltonian together with its Hartree–Fock reference.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianSpec {
    pub qubit_hamiltonian: PauliTermSum,
    pub n_qubits: usize,
    pub n_electrons: usize,
    /// Bit `p` set when spin-orbital `p` is occupied.
    pub reference_occupation: u64,
    pub reference_energy: Option<f64>,
    pub cc_reference_energy: Option<f64>,
}

impl HamiltonianSpec {
    pub fn new(qubit_hamiltonian: PauliTermSum, n_electrons: usize) -> Result<Self> {
        let n_qubits = qubit_hamiltonian.n_qubits();
        qubit_hamiltonian.require_hermitian(HERMITIAN_TOL)?;
        if n_electrons > n_qubits {
            return Err(Error::InvalidInput(format!(
                "{n_electrons} electrons do not fit in {n_qubits} spin-orbitals"
            )));
        }
        let reference_occupation = lowest_occupation(n_electrons);
        let reference_energy = Some(diagonal_element(&qubit_hamiltonian, reference_occupation));
        Ok(HamiltonianSpec {
            qubit_hamiltonian,
            n_qubits,
            n_electrons,
            reference_occupation,
            reference_energy,
            cc_reference_energy: None,
        })
    }

    /// Replaces the electron count and recomputes the reference.
    pub fn with_electrons(self, n_electrons: usize) -> Result<Self> {
        let cc = self.cc_reference_energy;
        let mut spec = HamiltonianSpec::new(self.qubit_hamiltonian, n_electrons)?;
        spec.cc_reference_energy = cc;
        Ok(spec)
    }
}

/// Bitmask with the lowest `n_electrons` spin-orbitals occupied.
pub fn lowest_occupation(n_electrons: usize) -> u64 {
    if n_electrons >= 64 {
        u64::MAX
    } else {
        (1u64 << n_electrons) - 1
    }
}

/// `<k|H|k>` for a computational basis state.
pub(crate) fn diagonal_element(h: &PauliTermSum, k: u64) -> f64 {
    h.iter()
        .filter(|(p, _)| p.x_mask() == 0)
        .map(|(p, c)| (c * p.apply_to_basis(k).1).re)
        .sum()
}

/// Spin-orbital index of spatial orbital `p` with spin `spin` (0 = up).
pub fn spin_orbital(p: usize, spin: usize) -> usize {
    2 * p + spin
}

/// Second-quantized electronic Hamiltonian mapped to qubits.
///
/// `H = E_core + sum h_pq a+_{p s} a_{q s}
///      + 1/2 sum (pq|rs) a+_{p s} a+_{r t} a_{s t} a_{q s}`
pub fn build_qubit_hamiltonian(ints: &MolecularIntegrals) -> Result<HamiltonianSpec> {
    let n = ints.n_spatial_orbitals;
    let n_qubits = 2 * n;
    if n_qubits > MAX_QUBITS {
        return Err(Error::DimensionLimit {
            n_qubits,
            limit: MAX_QUBITS,
            what: "qubit Hamiltonian",
        });
    }
    if ints.n_electrons > n_qubits {
        return Err(Error::InvalidInput(format!(
            "{} electrons exceed {} spin-orbitals",
            ints.n_electrons, n_qubits
        )));
    }

    let mut h = PauliTermSum::identity(n_qubits, ints.core_energy);
    let mut add = |prod: FermionProduct| -> Result<()> {
        for (p, c) in jw_transform(&prod, n_qubits)?.iter() {
            h.accumulate(p.clone(), *c);
        }
        Ok(())
    };

    for p in 0..n {
        for q in 0..n {
            let hpq = ints.h(p, q);
            if hpq == 0.0 {
                continue;
            }
            for spin in 0..2 {
                add(FermionProduct::new(
                    vec![
                        FermionFactor::create(spin_orbital(p, spin)),
                        FermionFactor::annihilate(spin_orbital(q, spin)),
                    ],
                    hpq,
                ))?;
            }
        }
    }

    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let g = ints.g(p, q, r, s);
                    if g == 0.0 {
                        continue;
                    }
                    for sigma in 0..2 {
                        for tau in 0..2 {
                            let (ps, qs) = (spin_orbital(p, sigma), spin_orbital(q, sigma));
                            let (rt, st) = (spin_orbital(r, tau), spin_orbital(s, tau));
                            if ps == rt || qs == st {
                                continue;
                            }
                            add(FermionProduct::new(
                                vec![
                                    FermionFactor::create(ps),
                                    FermionFactor::create(rt),
                                    FermionFactor::annihilate(st),
                                    FermionFactor::annihilate(qs),
                                ],
                                Complex64::new(0.5 * g, 0.0),
                            ))?;
                        }
                    }
                }
            }
        }
    }
    h.prune();
    HamiltonianSpec::new(h, ints.n_electrons)
}
