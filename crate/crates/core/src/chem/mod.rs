//! Molecular input: integrals, amplitudes and qubit Hamiltonians.

mod amplitudes;
mod fcidump;
mod hamiltonian;
mod pauli_file;

pub use amplitudes::{parse_amplitudes, CCAmplitudes, DoubleAmplitude, SingleAmplitude};
pub use fcidump::{parse_fcidump, write_fcidump, MolecularIntegrals};
pub use hamiltonian::{build_qubit_hamiltonian, lowest_occupation, spin_orbital, HamiltonianSpec, HERMITIAN_TOL};
pub use pauli_file::{parse_pauli_hamiltonian, write_pauli_hamiltonian};
