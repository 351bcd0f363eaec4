//! Non-unitary coupled-cluster state preparation.
//!
//! Coupled-cluster amplitudes are mapped onto circuits whose mid-circuit
//! measurements, post-selected on outcome 0, apply `I + t T` for every
//! excitation `T`. The crate covers the whole pipeline: Pauli algebra and the
//! Jordan–Wigner mapping, molecular file ingestion, circuit construction,
//! statevector simulation with an independent operator oracle, and gate-count
//! estimates against a trotterized UCCSD baseline.

pub mod builder;
pub mod chem;
pub mod circuit;
pub mod error;
pub mod fermion;
pub mod pauli;
pub mod resources;
pub mod sim;

pub use builder::{
    amplitude_to_angle, assemble_circuit, build_excitation_block, build_fermionic_primitive, plan_state_prep,
    AngleSpec, BlockLayout, ExcitationTerm, SignPhase, StatePrepPlan,
};
pub use chem::{
    build_qubit_hamiltonian, parse_amplitudes, parse_fcidump, parse_pauli_hamiltonian, CCAmplitudes, HamiltonianSpec,
    MolecularIntegrals,
};
pub use circuit::{decompose_controlled_s, gate_census, CircuitIR, Gate, GateCensus, GateKind, MeasureOp, Step};
pub use error::{Error, Result};
pub use fermion::{jw_annihilation, jw_creation, jw_transform, FermionFactor, FermionProduct};
pub use pauli::{Pauli, PauliString, PauliTermSum, Phase};
pub use resources::{ResourceQuery, ResourceReport};
pub use sim::{ground_state, oracle_product_state, run_postselected, run_sampled, RunResult, ShotRecord, StateVector};
