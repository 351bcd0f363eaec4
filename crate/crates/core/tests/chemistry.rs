mod common;

use common::{fixture, fixture_json};
use nucc_core::chem::{build_qubit_hamiltonian, parse_amplitudes, parse_fcidump, write_fcidump, HamiltonianSpec};
use nucc_core::fermion::number_operator;
use nucc_core::sim::{ground_state_with, EigenOptions};
use nucc_core::{ExcitationTerm, StateVector};

fn hamiltonian(name: &str) -> HamiltonianSpec {
    build_qubit_hamiltonian(&parse_fcidump(&fixture(&format!("{name}.fcidump"))).unwrap()).unwrap()
}

#[test]
fn h2_fcidump_shape() {
    let ints = parse_fcidump(&fixture("h2.fcidump")).unwrap();
    assert_eq!((ints.n_spatial_orbitals, ints.n_electrons), (2, 2));
    assert!(ints.symmetry_error() < 1e-10);
}

#[test]
fn fcidump_round_trip() {
    for name in ["h2", "h4", "lih"] {
        let ints = parse_fcidump(&fixture(&format!("{name}.fcidump"))).unwrap();
        let again = parse_fcidump(&write_fcidump(&ints)).unwrap();
        assert_eq!(again, ints, "{name}");
    }
}

#[test]
fn h2_dense_spectrum_matches_full_ci() {
    let spec = hamiltonian("h2");
    let reference = fixture_json("h2.ref.json");
    let m = spec.qubit_hamiltonian.to_dense_matrix().unwrap();
    let asym = (&m - m.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max);
    assert!(asym < 1e-12);
    // the half-filled sector holds the ground state; minimum over all sectors is no lower
    let e_min = m.symmetric_eigenvalues_min();
    let fci = reference["fci_energy"].as_f64().unwrap();
    assert!((e_min - fci).abs() < 1e-8, "{e_min} vs {fci}");
    assert!((e_min + 1.137).abs() < 0.01);
    let hf = reference["hf_energy"].as_f64().unwrap();
    assert!((spec.reference_energy.unwrap() - hf).abs() < 1e-10);
}

trait MinEigen {
    fn symmetric_eigenvalues_min(&self) -> f64;
}

impl MinEigen for nalgebra::DMatrix<num_complex::Complex64> {
    fn symmetric_eigenvalues_min(&self) -> f64 {
        // real symmetric for real orbitals; diagonalize the real part
        let re = self.map(|c| c.re);
        re.symmetric_eigen().eigenvalues.min()
    }
}

#[test]
fn ground_states_match_full_ci() {
    for name in ["h2", "h4", "lih"] {
        let spec = hamiltonian(name);
        let reference = fixture_json(&format!("{name}.ref.json"));
        let (energy, psi) = ground_state_with(
            &spec.qubit_hamiltonian,
            &EigenOptions::for_reference(spec.reference_occupation),
        )
        .unwrap();
        let fci = reference["fci_energy"].as_f64().unwrap();
        assert!((energy - fci).abs() < 1e-8, "{name}: {energy} vs {fci}");
        let hf = StateVector::basis(spec.n_qubits, spec.reference_occupation).unwrap();
        let overlap = hf.overlap(&psi).unwrap();
        let want = reference["hf_overlap"].as_f64().unwrap();
        assert!((overlap - want).abs() < 1e-6, "{name}: {overlap} vs {want}");
    }
}

#[test]
fn hamiltonians_conserve_particle_number() {
    for name in ["h2", "h4"] {
        let h = hamiltonian(name).qubit_hamiltonian;
        let n = number_operator(h.n_qubits());
        let comm = h.multiply(&n).unwrap().minus(&n.multiply(&h).unwrap()).unwrap();
        let size: f64 = comm.iter().map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt();
        assert!(size <= 1e-10, "{name}: {size:e}");
    }
}

#[test]
fn h2_double_amplitude_from_full_ci_ratio() {
    let spec = hamiltonian("h2");
    let amps = parse_amplitudes(&fixture("h2.amps.json")).unwrap();
    let d = amps.doubles[0];
    let (_, psi) = ground_state_with(
        &spec.qubit_hamiltonian,
        &EigenOptions::for_reference(spec.reference_occupation),
    )
    .unwrap();
    // coefficient of the determinant a+_a a+_b a_i a_j |HF> relative to |HF>
    let term = ExcitationTerm::double(d.i, d.j, d.a, d.b, 1.0).unwrap();
    let hf = StateVector::basis(4, spec.reference_occupation).unwrap();
    let excited = term.jw_image(4).unwrap().apply(hf.amplitudes()).unwrap();
    let c_double: num_complex::Complex64 = excited.iter().zip(psi.amplitudes()).map(|(a, b)| a.conj() * b).sum();
    let c_ref = psi.amplitudes()[spec.reference_occupation as usize];
    let ratio = (c_double / c_ref).re;
    assert!((ratio - d.t).abs() < 1e-6, "{ratio} vs {}", d.t);
}

#[test]
fn amplitude_fixtures_are_canonical() {
    for (name, singles, doubles) in [("h2", 2, 1), ("h4", 8, 18), ("lih", 16, 76)] {
        let amps = parse_amplitudes(&fixture(&format!("{name}.amps.json"))).unwrap();
        assert_eq!((amps.singles.len(), amps.doubles.len()), (singles, doubles), "{name}");
        assert!(amps.doubles.iter().all(|d| d.i < d.j && d.a < d.b));
        assert!(amps.cc_reference_energy.is_some());
    }
}
