use std::hint::black_box;
use std::path::Path;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nucc_core::builder::{amplitude_to_angle, BlockLayout};
use nucc_core::chem::{build_qubit_hamiltonian, parse_amplitudes, parse_fcidump};
use nucc_core::resources::{benchmark_molecules, report};
use nucc_core::sim::{expectation, ground_state_with, EigenOptions};
use nucc_core::{
    assemble_circuit, build_excitation_block, jw_transform, plan_state_prep, run_postselected, ExcitationTerm,
    HamiltonianSpec, ResourceQuery, StatePrepPlan, StateVector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(path).expect("fixture readable")
}

fn load(name: &str) -> (HamiltonianSpec, StatePrepPlan) {
    let spec = build_qubit_hamiltonian(&parse_fcidump(&fixture(&format!("{name}.fcidump"))).unwrap()).unwrap();
    let plan = plan_state_prep(&parse_amplitudes(&fixture(&format!("{name}.amps.json"))).unwrap(), 1e-8).unwrap();
    (spec, plan)
}

fn jordan_wigner(c: &mut Criterion) {
    let mut group = c.benchmark_group("jw_transform");
    for n in [8usize, 16, 32] {
        let term = ExcitationTerm::double(0, 1, n - 2, n - 1, 1.0).unwrap();
        let product = term.fermion_product();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| jw_transform(black_box(&product), n).unwrap())
        });
    }
    group.finish();
}

fn hamiltonian_build(c: &mut Criterion) {
    let ints = parse_fcidump(&fixture("lih.fcidump")).unwrap();
    c.bench_function("build_qubit_hamiltonian/lih", |b| {
        b.iter(|| build_qubit_hamiltonian(black_box(&ints)).unwrap())
    });
}

fn block_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_excitation_block");
    for (label, term) in [
        ("single", ExcitationTerm::single(0, 7, 0.1).unwrap()),
        ("double", ExcitationTerm::double(0, 1, 6, 7, 0.1).unwrap()),
    ] {
        let angle = amplitude_to_angle(term.amplitude());
        let layout = BlockLayout::contiguous(8, 8, term.n_body());
        let n_qubits = 8 + 2 * term.n_body() + 1;
        group.bench_function(label, |b| {
            b.iter(|| build_excitation_block(n_qubits, black_box(&term), &angle, &layout, 0).unwrap())
        });
    }
    group.finish();
}

fn simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulate");
    group.sample_size(10);
    for name in ["h2", "h4"] {
        let (spec, plan) = load(name);
        let circ = assemble_circuit(&plan, true).unwrap();
        let init = StateVector::zero(plan.n_system_qubits).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| {
                let run = run_postselected(black_box(&circ), &init).unwrap();
                expectation(&run.final_state, &spec.qubit_hamiltonian).unwrap()
            })
        });
    }
    group.finish();
}

fn gate_application(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let state = StateVector::random(16, &mut rng).unwrap();
    let gate = nucc_core::Gate::controlled(nucc_core::GateKind::CS, rng.gen_range(0..15), 15);
    c.bench_function("apply_gate/cs_16q", |b| {
        b.iter_batched(
            || state.clone(),
            |mut s| s.apply_gate(&gate).unwrap(),
            criterion::BatchSize::LargeInput,
        )
    });
}

fn eigensolver(c: &mut Criterion) {
    let mut group = c.benchmark_group("ground_state");
    group.sample_size(10);
    for name in ["h4", "lih"] {
        let (spec, _) = load(name);
        let opts = EigenOptions::for_reference(spec.reference_occupation);
        group.bench_function(name, |b| {
            b.iter(|| ground_state_with(black_box(&spec.qubit_hamiltonian), &opts).unwrap())
        });
    }
    group.finish();
}

fn resources(c: &mut Criterion) {
    let queries: Vec<ResourceQuery> = benchmark_molecules()
        .iter()
        .map(|m| ResourceQuery::for_molecule(m, 0.001))
        .collect();
    c.bench_function("resources/benchmark_set", |b| {
        b.iter(|| queries.iter().map(|q| report(q).unwrap().cnot_nonunitary).sum::<u64>())
    });
}

criterion_group!(
    benches,
    jordan_wigner,
    hamiltonian_build,
    block_build,
    simulation,
    gate_application,
    eigensolver,
    resources
);
criterion_main!(benches);
